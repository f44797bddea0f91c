#include "mfpinn/reliability/distribution.hpp"

#include <cmath>
#include <sstream>

#include "mfpinn/errors.hpp"
#include "mfpinn/reliability/normal.hpp"

namespace mfpinn::reliability {

Distribution Distribution::normal(double mean, double stddev) {
  if (!std::isfinite(mean) || !(stddev > 0.0) || !std::isfinite(stddev)) {
    throw DomainError("Normal distribution needs finite mean and sigma > 0");
  }
  return Distribution(Kind::kNormal, mean, stddev);
}

Distribution Distribution::uniform(double lo, double hi) {
  if (!std::isfinite(lo) || !std::isfinite(hi) || !(lo < hi)) {
    throw DomainError("Uniform distribution needs finite bounds with a < b");
  }
  return Distribution(Kind::kUniform, lo, hi);
}

double Distribution::mean() const noexcept { return kind_ == Kind::kNormal ? p1_ : 0.5 * (p1_ + p2_); }

double Distribution::stddev() const noexcept {
  return kind_ == Kind::kNormal ? p2_ : (p2_ - p1_) / std::sqrt(12.0);
}

double Distribution::cdf(double x) const {
  if (kind_ == Kind::kNormal) return normal_cdf((x - p1_) / p2_);
  if (x <= p1_) return 0.0;
  if (x >= p2_) return 1.0;
  return (x - p1_) / (p2_ - p1_);
}

double Distribution::inverse_cdf(double u) const {
  if (!(u > 0.0 && u < 1.0)) throw DomainError("inverse_cdf: probability must lie in (0, 1)");
  if (kind_ == Kind::kNormal) return p1_ + p2_ * inverse_normal_cdf(u);
  return p1_ + (p2_ - p1_) * u;
}

bool Distribution::in_support(double x) const noexcept {
  if (kind_ == Kind::kNormal) return std::isfinite(x);
  return x >= p1_ && x <= p2_;
}

std::string Distribution::describe() const {
  std::ostringstream os;
  os.precision(17);
  os << (kind_ == Kind::kNormal ? "normal(" : "uniform(") << p1_ << ", " << p2_ << ")";
  return os.str();
}

}  // namespace mfpinn::reliability
