#pragma once

#include <cstddef>
#include <vector>

#include <Eigen/Core>

#include "mfpinn/pinn/problem.hpp"

namespace mfpinn::benchmarks {

/// Uniform grid on [-1, 1] for u_t + a u u_x = nu u_xx with u(-1) = 1 + delta,
/// u(1) = -1 and u(0, x) = -x + (delta / 2)(1 - x). `advection` = false gives
/// the heat equation with the same data.
struct BurgersGrid {
  std::size_t nodes = 201;
  double nu = 0.05;
  double delta = 0.0;
  bool advection = true;
  /// Fraction of the stability bound used as the time step.
  double safety = 0.5;

  double dx() const noexcept { return 2.0 / static_cast<double>(nodes - 1); }
  /// min(dx^2 / (2 nu), dx / max|u|) with max|u| = 1 + delta; the
  /// advective bound is dropped when advection is off.
  double stable_step() const;
  std::vector<double> x() const;
};

double burgers_initial(double x, double delta);

/// Field at each record time (rows) on the grid nodes (columns). Record
/// times must be non-negative and ascending. Method of lines: central second
/// difference, first-order upwind advection, RK4 in time; each interval
/// between record times is split into equal steps no longer than
/// safety * stable_step(). Growth beyond ten times the initial maximum
/// throws NumericalError.
Eigen::MatrixXd burgers_fd_solve(const BurgersGrid& grid, const std::vector<double>& record_times);

/// Linear interpolation of one recorded profile at x.
double interpolate_profile(const BurgersGrid& grid, const Eigen::Ref<const Eigen::RowVectorXd>& profile, double x);

/// Zero crossing of the computed profile at each record time.
std::vector<double> burgers_transition_layers(const BurgersGrid& grid, const std::vector<double>& record_times);

inline constexpr double kBurgersDefaultViscosity = 0.05;

/// Inputs [delta, x, t], delta ~ U(0, 0.1), (x, t) in [-1, 1] x [0, 12];
/// u_hat = u(0, x) + t (1 - x)(1 + x) u_NN and the heat-equation residual
/// R = u_hat_t - nu u_hat_xx.
pinn::ProblemSpec burgers_problem(double nu = kBurgersDefaultViscosity);

}  // namespace mfpinn::benchmarks
