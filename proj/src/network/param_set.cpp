#include "mfpinn/network/param_set.hpp"

#include "mfpinn/errors.hpp"

namespace mfpinn::network {

ParamSet::ParamSet(Architecture arch) : arch_(std::move(arch)) {
  const auto& w = arch_.widths();
  std::size_t offset = 0;
  for (std::size_t j = 0; j + 1 < w.size(); ++j) {
    LayerSlice s{offset, w[j + 1], w[j] + 1};
    layout_.push_back(s);
    offset += s.size();
  }
  values_.assign(offset, 0.0);
  frozen_.assign(layout_.size(), 0);
}

ParamSet::MatrixMap ParamSet::matrix(std::size_t j) {
  const LayerSlice& s = layer(j);
  return MatrixMap(values_.data() + s.offset, static_cast<Eigen::Index>(s.rows),
                   static_cast<Eigen::Index>(s.cols));
}

ParamSet::ConstMatrixMap ParamSet::matrix(std::size_t j) const {
  const LayerSlice& s = layer(j);
  return ConstMatrixMap(values_.data() + s.offset, static_cast<Eigen::Index>(s.rows),
                        static_cast<Eigen::Index>(s.cols));
}

double ParamSet::weight(std::size_t j, std::size_t row, std::size_t col) const {
  const LayerSlice& s = layer(j);
  if (row >= s.rows || col + 1 >= s.cols) throw DomainError("ParamSet::weight: index out of range");
  return values_[s.offset + col * s.rows + row];
}

double ParamSet::bias(std::size_t j, std::size_t row) const {
  const LayerSlice& s = layer(j);
  if (row >= s.rows) throw DomainError("ParamSet::bias: index out of range");
  return values_[s.offset + (s.cols - 1) * s.rows + row];
}

void ParamSet::unfreeze_all() { frozen_.assign(layout_.size(), 0); }

void ParamSet::set_trailing_tunable(std::size_t trailing) {
  if (trailing < 1 || trailing > layout_.size()) {
    throw DomainError("tunable layer count must lie in [1, " + std::to_string(layout_.size()) + "]");
  }
  for (std::size_t j = 0; j < layout_.size(); ++j) frozen_[j] = j + trailing < layout_.size() ? 1 : 0;
}

std::vector<bool> ParamSet::freeze_mask() const {
  std::vector<bool> m(frozen_.size());
  for (std::size_t j = 0; j < frozen_.size(); ++j) m[j] = frozen_[j] != 0;
  return m;
}

void ParamSet::set_freeze_mask(const std::vector<bool>& mask) {
  if (mask.size() != layout_.size()) throw DomainError("freeze mask length must equal layer count");
  for (std::size_t j = 0; j < mask.size(); ++j) frozen_[j] = mask[j] ? 1 : 0;
}

std::size_t ParamSet::first_tunable_layer() const {
  for (std::size_t j = 0; j < frozen_.size(); ++j) {
    if (!frozen_[j]) return j;
  }
  return frozen_.size();
}

std::size_t ParamSet::tunable_count() const {
  std::size_t n = 0;
  for (std::size_t j = 0; j < layout_.size(); ++j) {
    if (!frozen_[j]) n += layout_[j].size();
  }
  return n;
}

std::vector<std::size_t> ParamSet::tunable_indices() const {
  std::vector<std::size_t> idx;
  idx.reserve(tunable_count());
  for (std::size_t j = 0; j < layout_.size(); ++j) {
    if (frozen_[j]) continue;
    for (std::size_t i = 0; i < layout_[j].size(); ++i) idx.push_back(layout_[j].offset + i);
  }
  return idx;
}

Eigen::VectorXd ParamSet::gather_tunable() const { return gather_tunable(values_); }

Eigen::VectorXd ParamSet::gather_tunable(std::span<const double> full) const {
  if (full.size() != values_.size()) throw DomainError("gather_tunable: length mismatch");
  Eigen::VectorXd x(static_cast<Eigen::Index>(tunable_count()));
  Eigen::Index k = 0;
  for (std::size_t j = 0; j < layout_.size(); ++j) {
    if (frozen_[j]) continue;
    for (std::size_t i = 0; i < layout_[j].size(); ++i) x[k++] = full[layout_[j].offset + i];
  }
  return x;
}

void ParamSet::scatter_tunable(const Eigen::VectorXd& x) {
  if (static_cast<std::size_t>(x.size()) != tunable_count()) throw DomainError("scatter_tunable: length mismatch");
  Eigen::Index k = 0;
  for (std::size_t j = 0; j < layout_.size(); ++j) {
    if (frozen_[j]) continue;
    for (std::size_t i = 0; i < layout_[j].size(); ++i) values_[layout_[j].offset + i] = x[k++];
  }
}

}  // namespace mfpinn::network
