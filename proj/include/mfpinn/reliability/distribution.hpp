#pragma once

#include <string>

namespace mfpinn::reliability {

/// Marginal law of one stochastic input: Normal(mu, sigma) or Uniform(a, b).
class Distribution {
 public:
  enum class Kind { kNormal, kUniform };

  static Distribution normal(double mean, double stddev);
  static Distribution uniform(double lo, double hi);

  Kind kind() const noexcept { return kind_; }
  /// (mu, sigma) for Normal, (a, b) for Uniform.
  double first() const noexcept { return p1_; }
  double second() const noexcept { return p2_; }

  double mean() const noexcept;
  double stddev() const noexcept;
  double cdf(double x) const;
  /// Quantile for u in (0, 1); DomainError otherwise.
  double inverse_cdf(double u) const;
  bool in_support(double x) const noexcept;

  std::string describe() const;
  bool operator==(const Distribution&) const = default;

 private:
  Distribution(Kind kind, double p1, double p2) : kind_(kind), p1_(p1), p2_(p2) {}

  Kind kind_ = Kind::kUniform;
  double p1_ = 0.0;
  double p2_ = 1.0;
};

}  // namespace mfpinn::reliability
