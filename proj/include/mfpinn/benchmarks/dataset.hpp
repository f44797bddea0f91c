#pragma once

#include <cstdint>

#include "mfpinn/benchmarks/registry.hpp"
#include "mfpinn/pinn/hf_dataset.hpp"

namespace mfpinn::benchmarks {

/// Runs the high-fidelity model on grid.samples Latin hypercube draws (or
/// the fixed samples) crossed with the sensor and time grids. The manifest
/// records the seed and the solver settings.
pinn::HfDataset build_hf_dataset(const BenchmarkDef& def, const HfGrid& grid, std::uint64_t seed);

inline pinn::HfDataset build_hf_dataset(const BenchmarkDef& def, std::uint64_t seed) {
  return build_hf_dataset(def, def.hf_grid, seed);
}

}  // namespace mfpinn::benchmarks
