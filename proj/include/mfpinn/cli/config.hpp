#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"
#include "mfpinn/benchmarks/registry.hpp"

namespace mfpinn::cli {

/// Invalid or inconsistent run configuration; `path` is the JSON pointer of
/// the offending field.
class ConfigError : public std::runtime_error {
 public:
  ConfigError(const std::string& path, const std::string& what)
      : std::runtime_error("config error at " + path + ": " + what), path_(path) {}
  const std::string& path() const noexcept { return path_; }

 private:
  std::string path_;
};

struct PhaseConfig {
  std::size_t rmsprop_iterations = 0;
  double learning_rate = 1e-3;
  std::size_t lbfgs_iterations = 0;
  std::size_t lbfgs_memory = 10;
};

/// Fully resolved run configuration: every field has a value once
/// resolve_config() returns.
struct RunConfig {
  std::string benchmark;
  benchmarks::BenchmarkOptions options;
  std::uint64_t seed = 1;

  std::size_t hidden_layers = 0;
  std::size_t width = 0;
  std::size_t collocation_points = 0;
  std::uint64_t collocation_seed = 0;
  std::uint64_t init_seed = 0;

  PhaseConfig lf;
  std::size_t tunable_layers = 1;
  std::optional<std::size_t> lbfgs_tunable_layers;
  PhaseConfig transfer;
  PhaseConfig hf_baseline;
  std::uint64_t hf_init_seed = 0;

  std::optional<std::string> data_path;  // dataset manifest
  std::size_t data_samples = 0;
  std::vector<double> data_x;
  std::vector<double> data_t;
  std::optional<std::vector<double>> data_fixed_samples;  // one stochastic dimension only
  std::uint64_t data_seed = 0;

  std::optional<std::string> checkpoint;
  std::size_t mcs_samples = 0;
  std::uint64_t mcs_seed = 0;
  double threshold = 0.0;
  double time = 0.0;
  std::vector<double> thresholds;
  std::size_t ensemble = 1;

  std::string output_dir = "out";

  benchmarks::BenchmarkDef benchmark_def() const;
  nlohmann::json to_json() const;
};

/// Builds a RunConfig from an optional JSON document and optional overrides.
/// The preset (flag, or the document's "preset"/"benchmark" field) supplies
/// defaults; document fields replace them; `seed_override` and
/// `out_override` win over both. Derived seeds default to fixed offsets from
/// the master seed. Throws ConfigError.
RunConfig resolve_config(const std::optional<nlohmann::json>& doc, const std::optional<std::string>& preset,
                         const std::optional<std::uint64_t>& seed_override,
                         const std::optional<std::string>& out_override);

nlohmann::json load_json_file(const std::string& path);

}  // namespace mfpinn::cli
