#pragma once

#include "mfpinn/pinn/problem.hpp"

namespace mfpinn::benchmarks {

/// du/dt = -Z u, u(0) = 1.
double decay_lf_solution(double z, double t);
/// t sin(t) [log(u_l^4)]^2 + 15 t^3 + 1 with u_l the low-fidelity solution.
double decay_hf_response(double z, double t);

/// Inputs [Z, t], Z ~ N(-2, 1), t in [0, 1]; u_hat = t u_NN + 1 and
/// R = u_hat_t + Z u_hat.
pinn::ProblemSpec decay_problem();

}  // namespace mfpinn::benchmarks
