#pragma once

#include <cstddef>
#include <string>
#include <vector>

namespace mfpinn::network {

enum class Activation { kTanh, kLinear };

std::string to_string(Activation a);
Activation activation_from_string(const std::string& name);

/// Fixed (non-trainable) affine map applied to raw inputs before the first
/// weight layer: z_i = (v_i - center_i) * scale_i.
struct InputMap {
  std::vector<double> center;
  std::vector<double> scale;

  static InputMap identity(std::size_t width);
  /// Maps [lo_i, hi_i] onto [-1, 1].
  static InputMap from_bounds(const std::vector<double>& lo, const std::vector<double>& hi);
};

/// Layer widths (input, hidden..., output) and one activation per weight
/// layer. Hidden layers use tanh and the output layer is linear.
class Architecture {
 public:
  Architecture() = default;
  explicit Architecture(std::vector<std::size_t> widths);
  Architecture(std::vector<std::size_t> widths, std::vector<Activation> activations);

  static Architecture fully_connected(std::size_t inputs, std::size_t hidden_layers, std::size_t width,
                                      std::size_t outputs);

  const std::vector<std::size_t>& widths() const noexcept { return widths_; }
  const std::vector<Activation>& activations() const noexcept { return activations_; }

  /// Number of weight layers (L + 1).
  std::size_t layer_count() const noexcept { return activations_.size(); }
  std::size_t hidden_layers() const noexcept { return widths_.size() - 2; }
  std::size_t input_width() const noexcept { return widths_.front(); }
  std::size_t output_width() const noexcept { return widths_.back(); }
  std::size_t fan_in(std::size_t layer) const { return widths_.at(layer); }
  std::size_t fan_out(std::size_t layer) const { return widths_.at(layer + 1); }

  /// Sum over layers of (fan_in + 1) * fan_out.
  std::size_t parameter_count() const;

  const InputMap& input_map() const noexcept { return input_map_; }
  Architecture& with_input_map(InputMap map);

  bool operator==(const Architecture& other) const;

 private:
  void validate() const;

  std::vector<std::size_t> widths_;
  std::vector<Activation> activations_;
  InputMap input_map_;
};

}  // namespace mfpinn::network
