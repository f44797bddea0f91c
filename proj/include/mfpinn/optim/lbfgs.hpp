#pragma once

#include <cstddef>
#include <string>

#include <Eigen/Core>

#include "mfpinn/network/param_set.hpp"
#include "mfpinn/optim/objective.hpp"
#include "mfpinn/optim/trace.hpp"

namespace mfpinn::optim {

struct LbfgsConfig {
  std::size_t memory = 10;
  std::size_t max_iterations = 10000;
  double gradient_tolerance = 1e-9;  // on the Euclidean norm of the gradient
  double c1 = 1e-4;
  double c2 = 0.9;
  std::size_t max_line_search_steps = 25;

  void validate() const;
};

enum class LbfgsTermination { kGradientTolerance, kMaxIterations, kLineSearchFailure };

std::string to_string(LbfgsTermination t);

struct LbfgsResult {
  Eigen::VectorXd x;
  double loss = 0.0;
  Eigen::VectorXd grad;
  std::size_t iterations = 0;
  std::size_t evaluations = 0;
  LbfgsTermination reason = LbfgsTermination::kMaxIterations;
};

/// Limited-memory BFGS (two-loop recursion) with a strong-Wolfe line search.
/// Accepted iterates have non-increasing loss. A line-search failure first
/// discards the curvature memory and retries along -grad; a second failure
/// ends the run with the best point so far.
LbfgsResult lbfgs_minimize(const VectorObjective& objective, Eigen::VectorXd x0, const LbfgsConfig& config,
                           TrainingLog* log = nullptr, const std::string& phase = "lbfgs");

/// Runs L-BFGS over the tunable slice of `params`; frozen layers are never
/// written.
LbfgsResult lbfgs_minimize(const ParamObjective& objective, network::ParamSet& params, const LbfgsConfig& config,
                           TrainingLog* log = nullptr, const std::string& phase = "lbfgs");

}  // namespace mfpinn::optim
