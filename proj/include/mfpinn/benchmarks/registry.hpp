#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "mfpinn/pinn/problem.hpp"
#include "mfpinn/pinn/training.hpp"
#include "mfpinn/reliability/mcs.hpp"

namespace mfpinn::benchmarks {

/// Scalar quantity the limit state is written in.
struct ResponseSpec {
  enum class Kind {
    kOutput,           // u_hat of `output`
    kAbsOutput,        // |u_hat| of `output`
    kTransitionLayer,  // zero crossing of `output` along x
  };
  Kind kind = Kind::kOutput;
  std::size_t output = 0;
};

/// Kronecker grid of high-fidelity observations. `fixed_samples`, when set,
/// replaces the Latin hypercube draw of stochastic samples.
struct HfGrid {
  std::size_t samples = 0;
  std::vector<double> x;
  std::vector<double> t;
  std::optional<Eigen::MatrixXd> fixed_samples;
};

/// Settings the source problems leave open.
struct BenchmarkOptions {
  double burgers_viscosity = 0.05;
  double cascade_input = 0.5;
  std::size_t burgers_nodes = 201;
  double rk4_step = 1e-3;
};

/// High-fidelity model: for one stochastic sample, responses at every
/// (sensor, time) pair in Kronecker order, (sensors * times) x outputs.
using HfModel =
    std::function<Eigen::MatrixXd(std::span<const double> xi, const std::vector<double>& x, const std::vector<double>& t)>;

struct BenchmarkDef {
  std::string id;
  pinn::ProblemSpec problem;
  reliability::LimitState limit;
  ResponseSpec response;

  std::size_t hidden_layers = 0;
  std::size_t width = 0;
  std::size_t collocation_points = 0;
  pinn::PhaseBudget lf_budget;
  pinn::TransferConfig transfer;
  pinn::PhaseBudget hf_budget;  // data-only baseline
  HfGrid hf_grid;
  std::size_t mcs_samples = 0;
  std::size_t ensemble = 1;
  BenchmarkOptions options;

  HfModel hf_model;
  /// Reference responses (in the units of `response`) from the
  /// high-fidelity solver.
  reliability::ResponseFn oracle;

  network::Architecture architecture() const { return problem.architecture(hidden_layers, width); }
};

const std::vector<std::string>& benchmark_ids();
/// DomainError for an unknown id.
BenchmarkDef make_benchmark(const std::string& id, const BenchmarkOptions& options = {});

}  // namespace mfpinn::benchmarks
