#include "mfpinn/reliability/sampling.hpp"

#include <cmath>

#include "mfpinn/errors.hpp"
#include "mfpinn/random.hpp"

namespace mfpinn::reliability {

std::vector<double> sample(const Distribution& dist, std::size_t n, std::uint64_t seed) {
  if (n < 1) throw DomainError("sample: n must be >= 1");
  Rng rng(seed);
  std::vector<double> out(n);
  for (double& v : out) v = dist.inverse_cdf(rng.uniform01());
  return out;
}

Eigen::MatrixXd sample_matrix(const std::vector<Distribution>& dists, std::size_t n, std::uint64_t seed) {
  if (n < 1) throw DomainError("sample_matrix: n must be >= 1");
  Eigen::MatrixXd out(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(dists.size()));
  for (std::size_t j = 0; j < dists.size(); ++j) {
    Rng rng(seed, j);
    for (std::size_t i = 0; i < n; ++i) {
      out(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = dists[j].inverse_cdf(rng.uniform01());
    }
  }
  return out;
}

Eigen::MatrixXd latin_hypercube_unit(std::size_t dims, std::size_t n, std::uint64_t seed) {
  if (n < 1) throw DomainError("latin_hypercube: n must be >= 1");
  Eigen::MatrixXd out(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(dims));
  const double width = 1.0 / static_cast<double>(n);
  for (std::size_t j = 0; j < dims; ++j) {
    Rng rng(seed, j);
    const std::vector<std::size_t> strata = rng.permutation(n);
    for (std::size_t i = 0; i < n; ++i) {
      double u = (static_cast<double>(strata[i]) + rng.uniform01()) * width;
      // Rounding can land exactly on the upper stratum edge; keep it inside.
      if (u >= 1.0) u = std::nextafter(1.0, 0.0);
      out(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = u;
    }
  }
  return out;
}

Eigen::MatrixXd latin_hypercube(const std::vector<Distribution>& dists, std::size_t n, std::uint64_t seed) {
  Eigen::MatrixXd u = latin_hypercube_unit(dists.size(), n, seed);
  for (Eigen::Index j = 0; j < u.cols(); ++j) {
    for (Eigen::Index i = 0; i < u.rows(); ++i) u(i, j) = dists[static_cast<std::size_t>(j)].inverse_cdf(u(i, j));
  }
  return u;
}

}  // namespace mfpinn::reliability
