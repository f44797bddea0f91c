#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include <Eigen/Core>

#include "mfpinn/reliability/distribution.hpp"

namespace mfpinn::reliability {

/// 1 when J < 0 (failure), 0 when J >= 0. Non-finite J throws DomainError.
int indicator(double j);

/// Failure criterion on a scalar response g evaluated at time `time`.
/// kFailBelow: J = g - threshold; kFailAbove: J = threshold - g.
struct LimitState {
  enum class Sense { kFailBelow, kFailAbove };

  double threshold = 0.0;
  double time = 0.0;
  Sense sense = Sense::kFailBelow;
  /// Set when `time` lies outside the span the surrogate saw data for.
  bool extrapolation = false;

  double margin(double response) const {
    return sense == Sense::kFailBelow ? response - threshold : threshold - response;
  }
  LimitState with_threshold(double t) const {
    LimitState c = *this;
    c.threshold = t;
    return c;
  }
};

struct ReliabilityResult {
  double pf = 0.0;
  double beta = 0.0;  // +-inf allowed
  std::size_t n = 0;
  std::size_t failures = 0;
  double std_error = 0.0;
  /// One-sided 95% upper bound 3/n when no failure was observed, else pf.
  double pf_upper95 = 0.0;
};

/// Scalar responses g for every row of `samples` (one stochastic sample per
/// row) at time t.
using ResponseFn = std::function<std::vector<double>(const Eigen::MatrixXd& samples, double t)>;

/// Estimate from precomputed responses. A non-finite response throws
/// NumericalError carrying the sample index.
ReliabilityResult estimate_from_responses(std::span<const double> responses, const LimitState& limit);

/// Plain Monte Carlo: n samples from `dists` (sample_matrix with `seed`).
ReliabilityResult mcs_probability_of_failure(const ResponseFn& response, const LimitState& limit,
                                             const std::vector<Distribution>& dists, std::size_t n,
                                             std::uint64_t seed);

/// One estimate per threshold, all on the same samples and responses.
std::vector<ReliabilityResult> pf_curve(const ResponseFn& response, const LimitState& limit,
                                        std::span<const double> thresholds, const std::vector<Distribution>& dists,
                                        std::size_t n, std::uint64_t seed);

/// Same as above with the responses already computed.
std::vector<ReliabilityResult> pf_curve_from_responses(std::span<const double> responses, const LimitState& limit,
                                                       std::span<const double> thresholds);

}  // namespace mfpinn::reliability
