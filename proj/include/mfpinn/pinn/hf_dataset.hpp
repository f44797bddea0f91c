#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "json.hpp"
#include "mfpinn/pinn/problem.hpp"

namespace mfpinn::pinn {

/// High-fidelity observations on the Kronecker grid samples x sensors x
/// times. Row r of `u` belongs to sample r / (s n), sensor (r / n) % s and
/// time r % n, where s = max(1, x.size()).
struct HfDataset {
  Eigen::MatrixXd xi;     // N_h x stochastic dims
  std::vector<double> x;  // empty for problems without space
  std::vector<double> t;
  Eigen::MatrixXd u;  // (N_h * s * n) x outputs
  std::string provenance;
  std::uint64_t seed = 0;
  nlohmann::json generator = nlohmann::json::object();

  std::size_t samples() const noexcept { return static_cast<std::size_t>(xi.rows()); }
  std::size_t sensors() const noexcept { return x.empty() ? 1 : x.size(); }
  std::size_t rows() const noexcept { return samples() * sensors() * t.size(); }
  std::size_t outputs() const noexcept { return static_cast<std::size_t>(u.cols()); }

  /// Network input column for every row, in the problem layout.
  Eigen::MatrixXd inputs(const ProblemSpec& problem) const;
  void validate() const;
};

nlohmann::json dataset_manifest(const HfDataset& data, const std::string& csv_name);

/// Writes `<stem>.csv` (columns xi_1..xi_N, x, t, u_1..u_m; x only when
/// sensors are declared) and `<stem>.json`. Values are printed with 17
/// significant digits so that reading back is lossless.
void save_dataset(const HfDataset& data, const std::filesystem::path& stem);

/// Reads the manifest and its CSV, checking that the rows follow the
/// declared Kronecker grid.
HfDataset load_dataset(const std::filesystem::path& manifest);

}  // namespace mfpinn::pinn
