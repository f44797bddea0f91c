#include "mfpinn/pinn/collocation.hpp"

#include "mfpinn/errors.hpp"
#include "mfpinn/reliability/sampling.hpp"

namespace mfpinn::pinn {

CollocationSet sample_collocation(const ProblemSpec& problem, std::size_t n, std::uint64_t seed) {
  if (n < 1) throw DomainError("sample_collocation: n must be >= 1");
  const std::size_t width = problem.input_width();
  const Eigen::MatrixXd u = reliability::latin_hypercube_unit(width, n, seed);

  CollocationSet set;
  set.seed = seed;
  set.points.resize(static_cast<Eigen::Index>(width), static_cast<Eigen::Index>(n));
  for (std::size_t i = 0; i < width; ++i) {
    const auto row = static_cast<Eigen::Index>(i);
    for (Eigen::Index k = 0; k < u.rows(); ++k) {
      const double p = u(k, row);
      double v;
      if (i < problem.stochastic_dims()) {
        v = problem.stochastic[i].inverse_cdf(p);
      } else if (problem.space && i == problem.space_index()) {
        v = problem.space->lo + (problem.space->hi - problem.space->lo) * p;
      } else {
        v = problem.time.lo + (problem.time.hi - problem.time.lo) * p;
      }
      set.points(row, k) = v;
    }
  }
  return set;
}

}  // namespace mfpinn::pinn
