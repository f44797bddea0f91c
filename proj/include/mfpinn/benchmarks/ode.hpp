#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include <Eigen/Core>

namespace mfpinn::benchmarks {

/// y' = f(t, y) with y(t0) = initial.
struct OdeSystem {
  using Rhs = std::function<void(double t, std::span<const double> y, std::span<double> dy)>;

  std::size_t dimension = 0;
  Rhs rhs;
  std::vector<double> initial;
  std::vector<double> parameters;  // informational; the rhs closes over its own copy
};

/// States at the requested record times, one row per time.
struct Trajectory {
  std::vector<double> times;
  Eigen::MatrixXd states;
};

/// Classical fourth-order Runge-Kutta from t0 with step h (the last step is
/// shortened to land on t1), linearly interpolated onto `record_times`,
/// which must lie in [t0, t1]. A non-finite state throws NumericalError
/// carrying the step index; the message names the time.
Trajectory rk4_integrate(const OdeSystem& sys, double t0, double t1, double h, const std::vector<double>& record_times);

}  // namespace mfpinn::benchmarks
