#include "mfpinn/optim/rmsprop.hpp"

#include <cmath>
#include <limits>

#include "mfpinn/errors.hpp"

namespace mfpinn::optim {

RmsPropState RmsPropState::fresh(const network::ParamSet& params, double learning_rate) {
  RmsPropState s;
  s.learning_rate = learning_rate;
  s.accumulator = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(params.tunable_count()));
  return s;
}

void rmsprop_step(RmsPropState& state, network::ParamSet& params, const deriv::GradRecord& grad) {
  if (grad.grad.size() != params.size()) throw DomainError("rmsprop_step: gradient layout does not match parameters");
  if (!(state.epsilon > 0.0) || !(state.decay > 0.0 && state.decay < 1.0)) {
    throw DomainError("rmsprop_step: need epsilon > 0 and 0 < decay < 1");
  }
  if (static_cast<std::size_t>(state.accumulator.size()) != params.tunable_count()) {
    throw DomainError("rmsprop_step: accumulator size does not match tunable parameter count");
  }
  auto values = params.values();
  Eigen::Index k = 0;
  // Validate first so a failing step leaves params untouched.
  for (std::size_t j = 0; j < params.layer_count(); ++j) {
    if (params.is_frozen(j)) continue;
    const auto& s = params.layer(j);
    for (std::size_t i = s.offset; i < s.offset + s.size(); ++i) {
      if (!std::isfinite(grad.grad[i])) {
        throw NumericalError("rmsprop: non-finite gradient at iteration " + std::to_string(state.iteration), i);
      }
    }
  }
  for (std::size_t j = 0; j < params.layer_count(); ++j) {
    if (params.is_frozen(j)) continue;
    const auto& s = params.layer(j);
    for (std::size_t i = s.offset; i < s.offset + s.size(); ++i, ++k) {
      const double g = grad.grad[i];
      double& acc = state.accumulator[k];
      acc = state.decay * acc + (1.0 - state.decay) * g * g;
      values[i] -= state.learning_rate * g / std::sqrt(acc + state.epsilon);
    }
  }
  ++state.iteration;
}

double run_rmsprop(const ParamObjective& objective, network::ParamSet& params, RmsPropState& state,
                   std::size_t iterations, TrainingLog* log, const std::string& phase) {
  double last = std::numeric_limits<double>::quiet_NaN();
  for (std::size_t it = 0; it < iterations; ++it) {
    const deriv::GradRecord g = objective(params);
    if (!std::isfinite(g.loss_value)) {
      throw NumericalError("rmsprop: loss diverged at iteration " + std::to_string(state.iteration), it);
    }
    last = g.loss_value;
    if (log) {
      const Eigen::VectorXd gt = params.gather_tunable(g.grad);
      log->add({phase, it, g.loss_value, gt.norm(), state.learning_rate});
    }
    rmsprop_step(state, params, g);
  }
  return last;
}

}  // namespace mfpinn::optim
