#pragma once

#include <cstddef>
#include <string>

#include <Eigen/Core>

#include "mfpinn/deriv/grad.hpp"
#include "mfpinn/network/param_set.hpp"
#include "mfpinn/optim/objective.hpp"
#include "mfpinn/optim/trace.hpp"

namespace mfpinn::optim {

/// RMSProp with the square root taken over (accumulator + epsilon).
struct RmsPropState {
  double learning_rate = 1e-3;
  double decay = 0.9;
  double epsilon = 1e-8;
  Eigen::VectorXd accumulator;  // one entry per tunable parameter
  std::size_t iteration = 0;

  /// Fresh state with a zero accumulator sized for `params`' tunable slice.
  static RmsPropState fresh(const network::ParamSet& params, double learning_rate);
};

/// One update of the unfrozen entries; frozen entries are left untouched.
void rmsprop_step(RmsPropState& state, network::ParamSet& params, const deriv::GradRecord& grad);

/// Runs `iterations` RMSProp steps; returns the loss at the last evaluated
/// point (before its update). Zero iterations leaves params unchanged.
double run_rmsprop(const ParamObjective& objective, network::ParamSet& params, RmsPropState& state,
                   std::size_t iterations, TrainingLog* log = nullptr, const std::string& phase = "rmsprop");

}  // namespace mfpinn::optim
