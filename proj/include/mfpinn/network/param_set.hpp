#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include <Eigen/Core>

#include "mfpinn/network/architecture.hpp"

namespace mfpinn::network {

/// Location of one weight layer inside the flat parameter vector. The layer
/// is stored column-major as a rows x cols matrix with cols = fan_in + 1; the
/// last column holds the bias.
struct LayerSlice {
  std::size_t offset = 0;
  std::size_t rows = 0;
  std::size_t cols = 0;

  std::size_t size() const noexcept { return rows * cols; }
};

/// Flat parameter vector of a fully connected network plus per-layer freeze
/// flags.
class ParamSet {
 public:
  ParamSet() = default;
  explicit ParamSet(Architecture arch);

  const Architecture& architecture() const noexcept { return arch_; }
  std::size_t size() const noexcept { return values_.size(); }
  std::size_t layer_count() const noexcept { return layout_.size(); }
  const std::vector<LayerSlice>& layout() const noexcept { return layout_; }
  const LayerSlice& layer(std::size_t j) const { return layout_.at(j); }

  std::span<const double> values() const noexcept { return values_; }
  std::span<double> values() noexcept { return values_; }

  using MatrixMap = Eigen::Map<Eigen::MatrixXd>;
  using ConstMatrixMap = Eigen::Map<const Eigen::MatrixXd>;
  /// Weight matrix of layer j with the bias column appended.
  MatrixMap matrix(std::size_t j);
  ConstMatrixMap matrix(std::size_t j) const;

  double weight(std::size_t j, std::size_t row, std::size_t col) const;
  double bias(std::size_t j, std::size_t row) const;

  // Freeze mask, one flag per weight layer.
  bool is_frozen(std::size_t j) const { return frozen_.at(j) != 0; }
  void set_frozen(std::size_t j, bool frozen) { frozen_.at(j) = frozen ? 1 : 0; }
  void unfreeze_all();
  /// Freezes the leading layers so that exactly `trailing` layers stay
  /// tunable. Requires 1 <= trailing <= layer_count().
  void set_trailing_tunable(std::size_t trailing);
  std::vector<bool> freeze_mask() const;
  void set_freeze_mask(const std::vector<bool>& mask);
  /// Index of the first tunable layer (layer_count() when all are frozen).
  std::size_t first_tunable_layer() const;

  std::size_t tunable_count() const;
  /// Flat indices of tunable entries in ascending order.
  std::vector<std::size_t> tunable_indices() const;
  Eigen::VectorXd gather_tunable() const;
  void scatter_tunable(const Eigen::VectorXd& x);
  /// Restricts a full-length vector to the tunable entries.
  Eigen::VectorXd gather_tunable(std::span<const double> full) const;

 private:
  Architecture arch_;
  std::vector<double> values_;
  std::vector<LayerSlice> layout_;
  std::vector<char> frozen_;
};

}  // namespace mfpinn::network
