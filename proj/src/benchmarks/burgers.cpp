#include "mfpinn/benchmarks/burgers.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <string>

#include "mfpinn/errors.hpp"
#include "mfpinn/reliability/transition.hpp"

namespace mfpinn::benchmarks {

double burgers_initial(double x, double delta) { return -x + 0.5 * delta * (1.0 - x); }

double BurgersGrid::stable_step() const {
  const double h = dx();
  double bound = h * h / (2.0 * nu);
  if (advection) bound = std::min(bound, h / (1.0 + std::abs(delta)));
  return bound;
}

std::vector<double> BurgersGrid::x() const {
  std::vector<double> xs(nodes);
  for (std::size_t i = 0; i < nodes; ++i) xs[i] = -1.0 + dx() * static_cast<double>(i);
  xs.back() = 1.0;
  return xs;
}

namespace {

void rhs(const BurgersGrid& g, const Eigen::VectorXd& u, Eigen::VectorXd& du) {
  const Eigen::Index n = u.size();
  const double h = g.dx();
  const double diff = g.nu / (h * h);
  du[0] = 0.0;
  du[n - 1] = 0.0;
  for (Eigen::Index i = 1; i + 1 < n; ++i) {
    double r = diff * (u[i - 1] - 2.0 * u[i] + u[i + 1]);
    if (g.advection) {
      const double ux = u[i] > 0.0 ? (u[i] - u[i - 1]) / h : (u[i + 1] - u[i]) / h;
      r -= u[i] * ux;
    }
    du[i] = r;
  }
}

}  // namespace

Eigen::MatrixXd burgers_fd_solve(const BurgersGrid& grid, const std::vector<double>& record_times) {
  if (grid.nodes < 3) throw DomainError("burgers: need at least 3 nodes");
  if (!(grid.nu > 0.0)) throw DomainError("burgers: viscosity must be positive");
  if (!(grid.safety > 0.0 && grid.safety <= 1.0)) throw DomainError("burgers: safety factor must lie in (0, 1]");
  for (std::size_t i = 0; i < record_times.size(); ++i) {
    if (record_times[i] < 0.0 || (i > 0 && record_times[i] < record_times[i - 1])) {
      throw DomainError("burgers: record times must be non-negative and ascending");
    }
  }

  const auto n = static_cast<Eigen::Index>(grid.nodes);
  const std::vector<double> xs = grid.x();
  Eigen::VectorXd u(n);
  for (Eigen::Index i = 0; i < n; ++i) u[i] = burgers_initial(xs[static_cast<std::size_t>(i)], grid.delta);
  u[0] = 1.0 + grid.delta;
  u[n - 1] = -1.0;
  const double limit = 10.0 * u.cwiseAbs().maxCoeff();
  const double max_dt = grid.safety * grid.stable_step();

  Eigen::MatrixXd out(static_cast<Eigen::Index>(record_times.size()), n);
  Eigen::VectorXd k1(n), k2(n), k3(n), k4(n), tmp(n);
  double t = 0.0;
  for (std::size_t r = 0; r < record_times.size(); ++r) {
    const double span = record_times[r] - t;
    const auto steps = static_cast<std::size_t>(std::ceil(span / max_dt - 1e-9));
    const double dt = steps ? span / static_cast<double>(steps) : 0.0;
    for (std::size_t s = 0; s < steps; ++s) {
      rhs(grid, u, k1);
      tmp = u + 0.5 * dt * k1;
      rhs(grid, tmp, k2);
      tmp = u + 0.5 * dt * k2;
      rhs(grid, tmp, k3);
      tmp = u + dt * k3;
      rhs(grid, tmp, k4);
      u += dt / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
      const double peak = u.cwiseAbs().maxCoeff();
      if (!(peak <= limit)) {
        throw NumericalError("burgers: solution grew beyond ten times its initial maximum at t = " +
                                 std::to_string(t + dt * static_cast<double>(s + 1)),
                             s);
      }
    }
    t = record_times[r];
    out.row(static_cast<Eigen::Index>(r)) = u.transpose();
  }
  return out;
}

double interpolate_profile(const BurgersGrid& grid, const Eigen::Ref<const Eigen::RowVectorXd>& profile, double x) {
  if (static_cast<std::size_t>(profile.size()) != grid.nodes) throw DomainError("burgers: profile length mismatch");
  if (x < -1.0 || x > 1.0) throw DomainError("burgers: x outside [-1, 1]");
  const double pos = (x + 1.0) / grid.dx();
  const auto i = std::min(static_cast<Eigen::Index>(pos), profile.size() - 2);
  const double w = pos - static_cast<double>(i);
  return (1.0 - w) * profile[i] + w * profile[i + 1];
}

std::vector<double> burgers_transition_layers(const BurgersGrid& grid, const std::vector<double>& record_times) {
  const Eigen::MatrixXd field = burgers_fd_solve(grid, record_times);
  const std::vector<double> xs = grid.x();
  std::vector<double> z;
  z.reserve(record_times.size());
  for (Eigen::Index r = 0; r < field.rows(); ++r) {
    const Eigen::RowVectorXd row = field.row(r);
    z.push_back(reliability::transition_on_grid(xs, std::vector<double>(row.data(), row.data() + row.size())));
  }
  return z;
}

namespace {

using deriv::Jet2;

constexpr std::size_t kDelta = 0;
constexpr std::size_t kX = 1;
constexpr std::size_t kT = 2;

struct BurgersAnsatz final : network::AnsatzFor<BurgersAnsatz> {
  std::size_t outputs() const override { return 1; }
  template <class T>
  network::AnsatzTerms<T> make_terms(std::size_t, std::span<const Jet2<T>> in) const {
    const Jet2<T>& x = in[kX];
    const Jet2<T> offset = -x + in[kDelta] * (T(1.0) - x) * T(0.5);
    return {offset, in[kT] * (T(1.0) - x) * (T(1.0) + x)};
  }
};

struct HeatResidual final : pinn::ResidualFor<HeatResidual> {
  explicit HeatResidual(double nu) : nu(nu) {}
  std::size_t arity() const override { return 1; }
  template <class T>
  std::vector<T> make(std::span<const Jet2<T>> u, std::span<const Jet2<T>>) const {
    return {u[0].d1(pinn::kTimeCoord) - T(nu) * u[0].d2(pinn::kSpaceCoord)};
  }
  double nu;
};

}  // namespace

pinn::ProblemSpec burgers_problem(double nu) {
  if (!(nu > 0.0)) throw DomainError("burgers: viscosity must be positive");
  pinn::ProblemSpec p;
  p.id = "burgers";
  p.stochastic = {reliability::Distribution::uniform(0.0, 0.1)};
  p.space = pinn::Interval{-1.0, 1.0};
  p.time = {0.0, 12.0};
  p.outputs = 1;
  p.ansatz = std::make_shared<BurgersAnsatz>();
  p.residual = std::make_shared<HeatResidual>(nu);
  return p;
}

}  // namespace mfpinn::benchmarks
