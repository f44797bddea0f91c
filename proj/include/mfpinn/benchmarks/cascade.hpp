#pragma once

#include <array>
#include <span>

#include "mfpinn/benchmarks/ode.hpp"
#include "mfpinn/pinn/problem.hpp"

namespace mfpinn::benchmarks {

inline constexpr double kCascadeDefaultInput = 0.5;
inline constexpr std::size_t kCascadeParameters = 13;

/// Michaelis-Menten constants of the three-stage cascade. As a stochastic
/// vector the order is K_m,1..6, V_max,1..6, G_4.
struct CascadeParams {
  std::array<double, 6> km{};
  std::array<double, 6> vmax{};
  double g4 = 0.0;

  static CascadeParams means();
  static CascadeParams from_vector(std::span<const double> xi);
  std::array<double, kCascadeParameters> to_vector() const;
};

/// Right-hand side for states e = (e1, e2, e3) and input strength I; I = 0
/// gives the low-fidelity model.
std::array<double, 3> cascade_rhs(const std::array<double, 3>& e, const CascadeParams& p, double input);

/// e(0) = (0, 1, 0).
OdeSystem cascade_system(const CascadeParams& p, double input);

/// Inputs [13 parameters, t], each parameter ~ U(0.9 mean, 1.1 mean),
/// t in [0, 10]; outputs e_hat = t e_NN + e(0) with residuals of the
/// low-fidelity model multiplied through by their denominators.
pinn::ProblemSpec cascade_problem();

}  // namespace mfpinn::benchmarks
