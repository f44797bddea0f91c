#include "mfpinn/network/network.hpp"

#include <cmath>

#include "mfpinn/random.hpp"

namespace mfpinn::network {

std::vector<double> forward(const ParamSet& params, std::span<const double> inputs) {
  return forward_generic<double, double>(params.architecture(), params.values(), inputs);
}

std::vector<Jet2<double>> forward_jet(const ParamSet& params, std::span<const Jet2<double>> inputs) {
  for (const auto& in : inputs) {
    if (in.active() != inputs.front().active() || in.second_mask() != inputs.front().second_mask()) {
      throw DomainError("forward_jet: inputs lifted with different layouts");
    }
  }
  return forward_generic<Jet2<double>, double>(params.architecture(), params.values(), inputs);
}

ParamSet xavier_init(const Architecture& arch, std::uint64_t seed) {
  ParamSet p(arch);
  Rng rng(seed);
  for (std::size_t j = 0; j < p.layer_count(); ++j) {
    const double limit = std::sqrt(6.0 / static_cast<double>(arch.fan_in(j) + arch.fan_out(j)));
    auto w = p.matrix(j);
    for (Eigen::Index c = 0; c + 1 < w.cols(); ++c) {
      for (Eigen::Index r = 0; r < w.rows(); ++r) w(r, c) = rng.uniform(-limit, limit);
    }
    w.col(w.cols() - 1).setZero();
  }
  return p;
}

}  // namespace mfpinn::network
