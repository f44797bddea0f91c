#pragma once

#include <cstddef>
#include <cstdint>

#include <Eigen/Core>

#include "mfpinn/pinn/problem.hpp"

namespace mfpinn::pinn {

/// Collocation points, one per column, in the problem's input layout.
struct CollocationSet {
  Eigen::MatrixXd points;
  std::uint64_t seed = 0;

  std::size_t size() const noexcept { return static_cast<std::size_t>(points.cols()); }
};

/// Latin hypercube over every input: stochastic columns through their
/// inverse CDF, space and time uniform over their intervals.
CollocationSet sample_collocation(const ProblemSpec& problem, std::size_t n, std::uint64_t seed);

}  // namespace mfpinn::pinn
