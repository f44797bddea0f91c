#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include <Eigen/Core>

#include "mfpinn/reliability/distribution.hpp"

namespace mfpinn::reliability {

/// n i.i.d. draws by inverse CDF on a seeded uniform stream.
std::vector<double> sample(const Distribution& dist, std::size_t n, std::uint64_t seed);

/// n x d matrix of independent draws, one row per sample. Column j uses its
/// own stream derived from (seed, j), so adding a dimension leaves the
/// others unchanged.
Eigen::MatrixXd sample_matrix(const std::vector<Distribution>& dists, std::size_t n, std::uint64_t seed);

/// Latin hypercube on the unit cube: n x d, each column places exactly one
/// point in every stratum [k/n, (k+1)/n).
Eigen::MatrixXd latin_hypercube_unit(std::size_t dims, std::size_t n, std::uint64_t seed);

/// Latin hypercube mapped through each marginal's inverse CDF.
Eigen::MatrixXd latin_hypercube(const std::vector<Distribution>& dists, std::size_t n, std::uint64_t seed);

}  // namespace mfpinn::reliability
