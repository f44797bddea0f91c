#include "mfpinn/benchmarks/dataset.hpp"

#include "mfpinn/errors.hpp"
#include "mfpinn/reliability/sampling.hpp"

namespace mfpinn::benchmarks {

pinn::HfDataset build_hf_dataset(const BenchmarkDef& def, const HfGrid& grid, std::uint64_t seed) {
  const pinn::ProblemSpec& pb = def.problem;
  if (grid.t.empty()) throw DomainError("HF grid needs at least one time");
  if (grid.x.empty() == pb.space.has_value()) throw DomainError("HF grid sensors do not match '" + def.id + "'");
  for (double t : grid.t) {
    if (!pb.time.contains(t)) throw DomainError("HF grid time outside the domain of '" + def.id + "'");
  }
  for (double x : grid.x) {
    if (!pb.space->contains(x)) throw DomainError("HF grid sensor outside the domain of '" + def.id + "'");
  }

  pinn::HfDataset d;
  if (grid.fixed_samples) {
    d.xi = *grid.fixed_samples;
    if (static_cast<std::size_t>(d.xi.cols()) != pb.stochastic_dims() || d.xi.rows() < 1) {
      throw DomainError("HF grid fixed samples do not match '" + def.id + "'");
    }
  } else {
    if (grid.samples < 1) throw DomainError("HF grid needs at least one sample");
    d.xi = reliability::latin_hypercube(pb.stochastic, grid.samples, seed);
  }
  d.x = grid.x;
  d.t = grid.t;
  const std::size_t per_sample = d.sensors() * d.t.size();
  d.u.resize(static_cast<Eigen::Index>(d.samples() * per_sample), static_cast<Eigen::Index>(pb.outputs));
  std::vector<double> xi(pb.stochastic_dims());
  for (Eigen::Index s = 0; s < d.xi.rows(); ++s) {
    for (std::size_t j = 0; j < xi.size(); ++j) xi[j] = d.xi(s, static_cast<Eigen::Index>(j));
    const Eigen::MatrixXd block = def.hf_model(xi, d.x, d.t);
    if (static_cast<std::size_t>(block.rows()) != per_sample || block.cols() != d.u.cols()) {
      throw DomainError("HF model returned the wrong shape for '" + def.id + "'");
    }
    d.u.middleRows(s * static_cast<Eigen::Index>(per_sample), static_cast<Eigen::Index>(per_sample)) = block;
  }
  d.provenance = def.id + " high-fidelity model";
  d.seed = seed;
  d.generator = {{"benchmark", def.id},
                 {"sampling", grid.fixed_samples ? "fixed" : "latin_hypercube"},
                 {"rk4_step", def.options.rk4_step},
                 {"burgers_nodes", def.options.burgers_nodes},
                 {"burgers_viscosity", def.options.burgers_viscosity},
                 {"cascade_input", def.options.cascade_input}};
  return d;
}

}  // namespace mfpinn::benchmarks
