#include "mfpinn/network/architecture.hpp"

#include <cmath>

#include "mfpinn/errors.hpp"

namespace mfpinn::network {

std::string to_string(Activation a) {
  switch (a) {
    case Activation::kTanh: return "tanh";
    case Activation::kLinear: return "linear";
  }
  return "unknown";
}

Activation activation_from_string(const std::string& name) {
  if (name == "tanh") return Activation::kTanh;
  if (name == "linear") return Activation::kLinear;
  throw DomainError("unknown activation '" + name + "'");
}

InputMap InputMap::identity(std::size_t width) {
  return InputMap{std::vector<double>(width, 0.0), std::vector<double>(width, 1.0)};
}

InputMap InputMap::from_bounds(const std::vector<double>& lo, const std::vector<double>& hi) {
  if (lo.size() != hi.size()) throw DomainError("InputMap: bound vectors differ in length");
  InputMap m;
  for (std::size_t i = 0; i < lo.size(); ++i) {
    if (!(hi[i] > lo[i])) throw DomainError("InputMap: empty input interval");
    m.center.push_back(0.5 * (lo[i] + hi[i]));
    m.scale.push_back(2.0 / (hi[i] - lo[i]));
  }
  return m;
}

Architecture::Architecture(std::vector<std::size_t> widths) : widths_(std::move(widths)) {
  if (widths_.size() >= 2) {
    activations_.assign(widths_.size() - 1, Activation::kTanh);
    activations_.back() = Activation::kLinear;
  }
  validate();
  input_map_ = InputMap::identity(widths_.front());
}

Architecture::Architecture(std::vector<std::size_t> widths, std::vector<Activation> activations)
    : widths_(std::move(widths)), activations_(std::move(activations)) {
  validate();
  input_map_ = InputMap::identity(widths_.front());
}

Architecture Architecture::fully_connected(std::size_t inputs, std::size_t hidden_layers, std::size_t width,
                                           std::size_t outputs) {
  std::vector<std::size_t> w{inputs};
  for (std::size_t i = 0; i < hidden_layers; ++i) w.push_back(width);
  w.push_back(outputs);
  return Architecture(std::move(w));
}

void Architecture::validate() const {
  if (widths_.size() < 3) throw DomainError("Architecture: at least one hidden layer is required");
  for (std::size_t w : widths_) {
    if (w < 1) throw DomainError("Architecture: layer widths must be >= 1");
  }
  if (activations_.size() != widths_.size() - 1) {
    throw DomainError("Architecture: need one activation per weight layer");
  }
}

std::size_t Architecture::parameter_count() const {
  std::size_t n = 0;
  for (std::size_t j = 0; j + 1 < widths_.size(); ++j) n += (widths_[j] + 1) * widths_[j + 1];
  return n;
}

Architecture& Architecture::with_input_map(InputMap map) {
  if (map.center.size() != input_width() || map.scale.size() != input_width()) {
    throw DomainError("Architecture: input map width mismatch");
  }
  for (double s : map.scale) {
    if (!std::isfinite(s) || s == 0.0) throw DomainError("Architecture: input scale must be finite and nonzero");
  }
  input_map_ = std::move(map);
  return *this;
}

bool Architecture::operator==(const Architecture& other) const {
  return widths_ == other.widths_ && activations_ == other.activations_ &&
         input_map_.center == other.input_map_.center && input_map_.scale == other.input_map_.scale;
}

}  // namespace mfpinn::network
