#pragma once

#include "mfpinn/benchmarks/ode.hpp"
#include "mfpinn/pinn/problem.hpp"

namespace mfpinn::benchmarks {

inline constexpr double kOscillatorX1Initial = -1.193;
inline constexpr double kOscillatorX2Initial = -3.876;

/// x1' = x2, x2' = -a1 x2 - a2 sin(x1).
OdeSystem oscillator_hf_system(double a1, double a2);
/// Linearised model: x2' = -a1 x2 - a2 x1.
OdeSystem oscillator_lf_system(double a1, double a2);

/// Inputs [a1, a2, t], a1 ~ U(0, 0.4), a2 ~ U(8.8, 9.2), t in [0, 5]; two
/// outputs x_hat_i = t x_NN,i + x_i(0).
pinn::ProblemSpec oscillator_problem();

}  // namespace mfpinn::benchmarks
