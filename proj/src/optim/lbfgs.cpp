#include "mfpinn/optim/lbfgs.hpp"

#include <cmath>
#include <deque>

#include "mfpinn/errors.hpp"
#include "mfpinn/optim/line_search.hpp"

namespace mfpinn::optim {

void LbfgsConfig::validate() const {
  if (memory < 1) throw DomainError("L-BFGS: memory must be >= 1");
  if (!(0.0 < c1 && c1 < c2 && c2 < 1.0)) throw DomainError("L-BFGS: need 0 < c1 < c2 < 1");
  if (max_line_search_steps < 1) throw DomainError("L-BFGS: need at least one line-search step");
}

std::string to_string(LbfgsTermination t) {
  switch (t) {
    case LbfgsTermination::kGradientTolerance: return "gradient_tolerance";
    case LbfgsTermination::kMaxIterations: return "max_iterations";
    case LbfgsTermination::kLineSearchFailure: return "line_search_failure";
  }
  return "unknown";
}

namespace {

struct Pair {
  Eigen::VectorXd s;
  Eigen::VectorXd y;
  double rho;
};

Eigen::VectorXd two_loop(const std::deque<Pair>& mem, const Eigen::VectorXd& g) {
  Eigen::VectorXd q = g;
  std::vector<double> alpha(mem.size());
  for (std::size_t i = mem.size(); i-- > 0;) {
    alpha[i] = mem[i].rho * mem[i].s.dot(q);
    q -= alpha[i] * mem[i].y;
  }
  const Pair& last = mem.back();
  q *= last.s.dot(last.y) / last.y.squaredNorm();
  for (std::size_t i = 0; i < mem.size(); ++i) {
    const double beta = mem[i].rho * mem[i].y.dot(q);
    q += (alpha[i] - beta) * mem[i].s;
  }
  return -q;
}

}  // namespace

LbfgsResult lbfgs_minimize(const VectorObjective& objective, Eigen::VectorXd x0, const LbfgsConfig& config,
                           TrainingLog* log, const std::string& phase) {
  config.validate();
  LbfgsResult r;
  r.x = std::move(x0);
  r.grad.resize(r.x.size());
  r.loss = objective(r.x, r.grad);
  r.evaluations = 1;
  if (!std::isfinite(r.loss)) throw NumericalError("L-BFGS: initial loss is not finite", 0);
  if (r.grad.norm() <= config.gradient_tolerance) {
    r.reason = LbfgsTermination::kGradientTolerance;
    return r;
  }

  std::deque<Pair> mem;
  r.reason = LbfgsTermination::kMaxIterations;
  while (r.iterations < config.max_iterations) {
    Eigen::VectorXd d;
    double step0 = 1.0;
    if (mem.empty()) {
      d = -r.grad;
      step0 = std::min(1.0, 1.0 / r.grad.norm());
    } else {
      d = two_loop(mem, r.grad);
      if (!(r.grad.dot(d) < 0.0)) {
        mem.clear();
        d = -r.grad;
        step0 = std::min(1.0, 1.0 / r.grad.norm());
      }
    }

    LineSearchResult ls =
        wolfe_line_search(objective, r.x, r.loss, r.grad, d, step0, config.c1, config.c2, config.max_line_search_steps);
    r.evaluations += ls.evaluations;
    if (!ls.success) {
      const bool progressed = ls.step > 0.0 && ls.value < r.loss;
      if (progressed) {
        r.x += ls.step * d;
        r.loss = ls.value;
        r.grad = ls.grad;
      }
      if (!mem.empty()) {
        mem.clear();
        continue;
      }
      if (progressed) {
        ++r.iterations;
        continue;
      }
      r.reason = LbfgsTermination::kLineSearchFailure;
      break;
    }

    const Eigen::VectorXd s = ls.step * d;
    const Eigen::VectorXd y = ls.grad - r.grad;
    r.x += s;
    r.loss = ls.value;
    r.grad = ls.grad;
    ++r.iterations;

    const double sy = s.dot(y);
    if (sy > 1e-12 * s.norm() * y.norm()) {
      mem.push_back(Pair{s, y, 1.0 / sy});
      if (mem.size() > config.memory) mem.pop_front();
    }

    const double gnorm = r.grad.norm();
    if (log) log->add({phase, r.iterations, r.loss, gnorm, ls.step});
    if (gnorm <= config.gradient_tolerance) {
      r.reason = LbfgsTermination::kGradientTolerance;
      break;
    }
  }
  return r;
}

LbfgsResult lbfgs_minimize(const ParamObjective& objective, network::ParamSet& params, const LbfgsConfig& config,
                           TrainingLog* log, const std::string& phase) {
  network::ParamSet work = params;
  VectorObjective vec = [&](const Eigen::VectorXd& x, Eigen::VectorXd& grad) {
    work.scatter_tunable(x);
    const deriv::GradRecord g = objective(work);
    grad = work.gather_tunable(g.grad);
    return g.loss_value;
  };
  LbfgsResult r = lbfgs_minimize(vec, params.gather_tunable(), config, log, phase);
  params.scatter_tunable(r.x);
  return r;
}

}  // namespace mfpinn::optim
