#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <vector>

namespace mfpinn::reliability {

/// Zero crossing of u on [lo, hi] by bisection. Stops once |u| <= 1e-10 or
/// the bracket is no wider than 1e-12. BracketError when u(lo) and u(hi)
/// share a sign.
double find_transition_layer(const std::function<double(double)>& u, double lo, double hi);

/// Vectorised bisection: `u(x)` evaluates profile i at x[i] for every i at
/// once. Entries without a sign change come back empty and are counted in
/// `unbracketed`.
struct TransitionBatch {
  std::vector<std::optional<double>> z;
  std::size_t unbracketed = 0;
};
TransitionBatch find_transition_layers(const std::function<std::vector<double>(const std::vector<double>&)>& u,
                                       std::size_t count, double lo, double hi);

/// Zero crossing of a sampled profile by linear interpolation between the
/// first pair of nodes with a sign change; BracketError when none exists.
double transition_on_grid(const std::vector<double>& x, const std::vector<double>& u);

}  // namespace mfpinn::reliability
