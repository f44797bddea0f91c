#pragma once

#include <functional>
#include <span>
#include <vector>

#include "mfpinn/deriv/tape.hpp"

namespace mfpinn::deriv {

/// Loss value together with its gradient; `grad` uses the flat parameter
/// layout it was computed against.
struct GradRecord {
  double loss_value = 0.0;
  std::vector<double> grad;
};

/// Throws NumericalError at the first non-finite entry (index = parameter
/// index; a non-finite loss reports index 0 with a distinct message).
void require_finite(const GradRecord& record);

/// A loss written against recorded parameters. It must be a deterministic
/// function of `theta`.
using RecordedLoss = std::function<Var(std::span<const Var> theta)>;

/// Exact gradient of `loss_eval` at `params` by reverse sweep over a fresh
/// tape. Everything the loss computes from `theta` (including jet
/// derivative channels) contributes.
GradRecord param_gradient(const RecordedLoss& loss_eval, std::span<const double> params);

}  // namespace mfpinn::deriv
