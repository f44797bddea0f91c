#pragma once

#include <cstddef>

#include <Eigen/Core>

#include "mfpinn/optim/objective.hpp"

namespace mfpinn::optim {

struct LineSearchResult {
  double step = 0.0;
  double value = 0.0;    // f at the returned step
  Eigen::VectorXd grad;  // gradient at the returned step
  std::size_t evaluations = 0;
  bool success = false;  // strong Wolfe conditions hold at `step`
};

/// Strong-Wolfe line search (bracketing followed by zoom with safeguarded
/// cubic interpolation). `f0`/`g0` are the value and gradient at `x`.
/// When the step budget runs out the lowest sufficient-decrease point seen
/// is returned with success = false (step 0 if there is none).
LineSearchResult wolfe_line_search(const VectorObjective& f, const Eigen::VectorXd& x, double f0,
                                   const Eigen::VectorXd& g0, const Eigen::VectorXd& direction, double initial_step,
                                   double c1, double c2, std::size_t max_steps);

/// Convenience overload evaluating f at x first (that evaluation is counted).
LineSearchResult wolfe_line_search(const VectorObjective& f, const Eigen::VectorXd& x,
                                   const Eigen::VectorXd& direction, double c1, double c2, std::size_t max_steps,
                                   double initial_step = 1.0);

}  // namespace mfpinn::optim
