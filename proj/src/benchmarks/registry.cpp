#include "mfpinn/benchmarks/registry.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <memory>
#include <mutex>

#include "mfpinn/benchmarks/burgers.hpp"
#include "mfpinn/benchmarks/cascade.hpp"
#include "mfpinn/benchmarks/decay.hpp"
#include "mfpinn/benchmarks/ode.hpp"
#include "mfpinn/benchmarks/oscillator.hpp"
#include "mfpinn/errors.hpp"

namespace mfpinn::benchmarks {

using reliability::LimitState;

namespace {

// Physics-loss training is badly conditioned; a long curvature history is
// what lets L-BFGS resolve the exponential tails.
constexpr std::size_t kPhysicsLbfgsMemory = 100;

std::vector<double> equispaced(double lo, double hi, std::size_t n) {
  std::vector<double> v(n);
  for (std::size_t i = 0; i < n; ++i) v[i] = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n - 1);
  return v;
}

double span_end(const std::vector<double>& t) { return t.empty() ? 0.0 : *std::max_element(t.begin(), t.end()); }

/// ODE-based high-fidelity model: integrate from 0 and report every state.
HfModel ode_model(std::function<OdeSystem(std::span<const double>)> make, double h) {
  return [make = std::move(make), h](std::span<const double> xi, const std::vector<double>&, const std::vector<double>& t) {
    return rk4_integrate(make(xi), 0.0, span_end(t), h, t).states;
  };
}

reliability::ResponseFn ode_oracle(std::function<OdeSystem(std::span<const double>)> make, double h,
                                   std::size_t component, bool absolute) {
  return [make = std::move(make), h, component, absolute](const Eigen::MatrixXd& samples, double t) {
    std::vector<double> out(static_cast<std::size_t>(samples.rows()));
    std::vector<double> xi(static_cast<std::size_t>(samples.cols()));
    for (Eigen::Index i = 0; i < samples.rows(); ++i) {
      for (Eigen::Index j = 0; j < samples.cols(); ++j) xi[static_cast<std::size_t>(j)] = samples(i, j);
      const double v = rk4_integrate(make(xi), 0.0, t, h, {t}).states(0, static_cast<Eigen::Index>(component));
      out[static_cast<std::size_t>(i)] = absolute ? std::abs(v) : v;
    }
    return out;
  };
}

BenchmarkDef decay_def() {
  BenchmarkDef d;
  d.id = "decay_ode";
  d.problem = decay_problem();
  d.limit = LimitState{18.0, 1.0, LimitState::Sense::kFailBelow, false};
  d.response = {ResponseSpec::Kind::kOutput, 0};
  d.hidden_layers = 5;
  d.width = 50;
  d.collocation_points = 8000;
  d.lf_budget = {15000, 1e-3, 10000, kPhysicsLbfgsMemory};
  d.transfer = {2, {10000, 1e-3, 10000}, std::nullopt};
  d.hf_budget = {10000, 1e-3, 10000};
  d.hf_grid.samples = 15;
  d.hf_grid.t = {0.0, 1.0};
  d.mcs_samples = 1000000;
  d.hf_model = [](std::span<const double> xi, const std::vector<double>&, const std::vector<double>& t) {
    Eigen::MatrixXd u(static_cast<Eigen::Index>(t.size()), 1);
    for (std::size_t k = 0; k < t.size(); ++k) u(static_cast<Eigen::Index>(k), 0) = decay_hf_response(xi[0], t[k]);
    return u;
  };
  d.oracle = [](const Eigen::MatrixXd& samples, double t) {
    std::vector<double> out(static_cast<std::size_t>(samples.rows()));
    for (Eigen::Index i = 0; i < samples.rows(); ++i) out[static_cast<std::size_t>(i)] = decay_hf_response(samples(i, 0), t);
    return out;
  };
  return d;
}

BenchmarkDef burgers_def(const BenchmarkOptions& opt) {
  BenchmarkDef d;
  d.id = "burgers";
  d.problem = burgers_problem(opt.burgers_viscosity);
  d.limit = LimitState{0.40, 10.0, LimitState::Sense::kFailAbove, true};
  d.response = {ResponseSpec::Kind::kTransitionLayer, 0};
  d.hidden_layers = 6;
  d.width = 50;
  d.collocation_points = 30000;
  d.lf_budget = {500, 1e-3, 1000, kPhysicsLbfgsMemory};
  d.transfer = {2, {6000, 3e-3, 10000}, std::size_t{1}};
  d.hf_budget = {6000, 3e-3, 10000};
  d.hf_grid.x = {-1.0, 0.0, 1.0};
  d.hf_grid.t = {1.0, 2.14, 3.29, 4.43, 5.57, 6.71, 7.86, 9.0};
  d.hf_grid.fixed_samples = Eigen::MatrixXd(5, 1);
  *d.hf_grid.fixed_samples << 0.0, 0.025, 0.05, 0.075, 0.1;
  d.hf_grid.samples = 5;
  d.mcs_samples = 10000;
  d.ensemble = 20;

  BurgersGrid base;
  base.nodes = opt.burgers_nodes;
  base.nu = opt.burgers_viscosity;
  d.hf_model = [base](std::span<const double> xi, const std::vector<double>& x, const std::vector<double>& t) {
    BurgersGrid g = base;
    g.delta = xi[0];
    std::vector<std::size_t> order(t.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return t[a] < t[b]; });
    std::vector<double> sorted;
    for (std::size_t i : order) sorted.push_back(t[i]);
    const Eigen::MatrixXd field = burgers_fd_solve(g, sorted);
    Eigen::MatrixXd u(static_cast<Eigen::Index>(x.size() * t.size()), 1);
    for (std::size_t k = 0; k < x.size(); ++k) {
      for (std::size_t r = 0; r < order.size(); ++r) {
        u(static_cast<Eigen::Index>(k * t.size() + order[r]), 0) =
            interpolate_profile(g, field.row(static_cast<Eigen::Index>(r)), x[k]);
      }
    }
    return u;
  };

  // z(delta, t) is smooth in delta, so the oracle solves on a fine delta grid
  // once per time and interpolates.
  struct Table {
    std::mutex mutex;
    std::map<double, std::vector<double>> z;
  };
  auto table = std::make_shared<Table>();
  const std::vector<double> deltas = equispaced(0.0, 0.1, 41);
  d.oracle = [base, table, deltas](const Eigen::MatrixXd& samples, double t) {
    std::vector<double> z;
    {
      std::lock_guard<std::mutex> lock(table->mutex);
      auto it = table->z.find(t);
      if (it == table->z.end()) {
        std::vector<double> row;
        for (double delta : deltas) {
          BurgersGrid g = base;
          g.delta = delta;
          row.push_back(burgers_transition_layers(g, {t}).front());
        }
        it = table->z.emplace(t, std::move(row)).first;
      }
      z = it->second;
    }
    std::vector<double> out(static_cast<std::size_t>(samples.rows()));
    const double step = deltas[1] - deltas[0];
    for (Eigen::Index i = 0; i < samples.rows(); ++i) {
      const double delta = samples(i, 0);
      if (delta < deltas.front() || delta > deltas.back()) throw DomainError("burgers oracle: delta outside [0, 0.1]");
      const auto k = std::min(static_cast<std::size_t>((delta - deltas.front()) / step), deltas.size() - 2);
      const double w = (delta - deltas[k]) / step;
      out[static_cast<std::size_t>(i)] = (1.0 - w) * z[k] + w * z[k + 1];
    }
    return out;
  };
  return d;
}

BenchmarkDef oscillator_def(const BenchmarkOptions& opt) {
  BenchmarkDef d;
  d.id = "oscillator";
  d.problem = oscillator_problem();
  d.limit = LimitState{4.0, 5.0, LimitState::Sense::kFailAbove, false};
  d.response = {ResponseSpec::Kind::kAbsOutput, 1};
  d.hidden_layers = 4;
  d.width = 50;
  d.collocation_points = 10000;
  d.lf_budget = {15000, 1e-3, 10000, kPhysicsLbfgsMemory};
  d.transfer = {2, {10000, 1e-3, 10000}, std::nullopt};
  d.hf_budget = {10000, 1e-3, 10000};
  d.hf_grid.samples = 5;
  d.hf_grid.t = equispaced(0.0, 5.0, 5);
  d.mcs_samples = 10000;
  auto make = [](std::span<const double> xi) { return oscillator_hf_system(xi[0], xi[1]); };
  d.hf_model = ode_model(make, opt.rk4_step);
  d.oracle = ode_oracle(make, opt.rk4_step, 1, true);
  return d;
}

BenchmarkDef cascade_def(const BenchmarkOptions& opt) {
  BenchmarkDef d;
  d.id = "cascade";
  d.problem = cascade_problem();
  d.limit = LimitState{0.40, 3.0, LimitState::Sense::kFailBelow, true};
  d.response = {ResponseSpec::Kind::kOutput, 2};
  d.hidden_layers = 4;
  d.width = 100;
  d.collocation_points = 10000;
  d.lf_budget = {5000, 1e-3, 10000, kPhysicsLbfgsMemory};
  d.transfer = {1, {5000, 1e-3, 10000}, std::nullopt};
  d.hf_budget = {5000, 1e-3, 10000};
  d.hf_grid.samples = 10;
  d.hf_grid.t = equispaced(4.0, 7.0, 5);
  d.mcs_samples = 10000;
  const double input = opt.cascade_input;
  auto make = [input](std::span<const double> xi) { return cascade_system(CascadeParams::from_vector(xi), input); };
  d.hf_model = ode_model(make, opt.rk4_step);
  d.oracle = ode_oracle(make, opt.rk4_step, 2, false);
  return d;
}

}  // namespace

const std::vector<std::string>& benchmark_ids() {
  static const std::vector<std::string> ids = {"decay_ode", "burgers", "oscillator", "cascade"};
  return ids;
}

BenchmarkDef make_benchmark(const std::string& id, const BenchmarkOptions& options) {
  BenchmarkDef d;
  if (id == "decay_ode") {
    d = decay_def();
  } else if (id == "burgers") {
    d = burgers_def(options);
  } else if (id == "oscillator") {
    d = oscillator_def(options);
  } else if (id == "cascade") {
    d = cascade_def(options);
  } else {
    throw DomainError("unknown benchmark '" + id + "'");
  }
  d.options = options;
  return d;
}

}  // namespace mfpinn::benchmarks
