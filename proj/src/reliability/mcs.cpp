#include "mfpinn/reliability/mcs.hpp"

#include <cmath>

#include "mfpinn/errors.hpp"
#include "mfpinn/reliability/normal.hpp"
#include "mfpinn/reliability/sampling.hpp"

namespace mfpinn::reliability {

int indicator(double j) {
  if (!std::isfinite(j)) throw DomainError("indicator: limit-state value is not finite");
  return j < 0.0 ? 1 : 0;
}

ReliabilityResult estimate_from_responses(std::span<const double> responses, const LimitState& limit) {
  if (responses.empty()) throw DomainError("reliability estimate needs at least one sample");
  std::size_t failures = 0;
  for (std::size_t i = 0; i < responses.size(); ++i) {
    if (!std::isfinite(responses[i])) throw NumericalError("surrogate returned a non-finite response", i);
    failures += static_cast<std::size_t>(indicator(limit.margin(responses[i])));
  }
  ReliabilityResult r;
  r.n = responses.size();
  r.failures = failures;
  const double n = static_cast<double>(r.n);
  r.pf = static_cast<double>(failures) / n;
  r.beta = reliability_index(r.pf);
  r.std_error = std::sqrt(r.pf * (1.0 - r.pf) / n);
  r.pf_upper95 = failures == 0 ? 3.0 / n : r.pf;
  return r;
}

ReliabilityResult mcs_probability_of_failure(const ResponseFn& response, const LimitState& limit,
                                             const std::vector<Distribution>& dists, std::size_t n,
                                             std::uint64_t seed) {
  const Eigen::MatrixXd samples = sample_matrix(dists, n, seed);
  const std::vector<double> g = response(samples, limit.time);
  if (g.size() != n) throw DomainError("surrogate returned the wrong number of responses");
  return estimate_from_responses(g, limit);
}

std::vector<ReliabilityResult> pf_curve_from_responses(std::span<const double> responses, const LimitState& limit,
                                                       std::span<const double> thresholds) {
  std::vector<ReliabilityResult> out;
  out.reserve(thresholds.size());
  for (double t : thresholds) out.push_back(estimate_from_responses(responses, limit.with_threshold(t)));
  return out;
}

std::vector<ReliabilityResult> pf_curve(const ResponseFn& response, const LimitState& limit,
                                        std::span<const double> thresholds, const std::vector<Distribution>& dists,
                                        std::size_t n, std::uint64_t seed) {
  const Eigen::MatrixXd samples = sample_matrix(dists, n, seed);
  const std::vector<double> g = response(samples, limit.time);
  if (g.size() != n) throw DomainError("surrogate returned the wrong number of responses");
  return pf_curve_from_responses(g, limit, thresholds);
}

}  // namespace mfpinn::reliability
