#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include <Eigen/Core>

#include "mfpinn/network/param_set.hpp"

namespace mfpinn::network {

/// Which raw inputs carry derivative channels through a batched evaluation.
struct JetLayout {
  std::vector<std::size_t> active_inputs;  // input index of each active coordinate
  std::vector<bool> second_order;          // per active coordinate

  std::size_t active() const noexcept { return active_inputs.size(); }
};

/// Column-batched network evaluation (one point per column) with forward
/// derivative channels and a reverse sweep that accumulates parameter
/// gradients through the value and derivative channels alike.
///
/// The evaluator keeps the intermediate activations of the last forward()
/// call; backward() must use the same ParamSet.
class BatchEvaluator {
 public:
  using ConstBlock = Eigen::Block<const Eigen::MatrixXd, Eigen::Dynamic, Eigen::Dynamic, true>;

  void forward(const ParamSet& params, const Eigen::Ref<const Eigen::MatrixXd>& inputs, const JetLayout& layout);

  std::size_t points() const { return static_cast<std::size_t>(m_); }
  ConstBlock value() const { return channel(act_.back(), 0); }
  ConstBlock d1(std::size_t k) const { return channel(act_.back(), d1_channel(k)); }
  /// Only valid for coordinates with second-order tracking.
  ConstBlock d2(std::size_t k) const { return channel(act_.back(), d2_channel(k)); }

  /// Output-channel adjoints, shaped like the corresponding outputs. d2[k]
  /// stays empty for coordinates without second-order tracking.
  struct Adjoint {
    Eigen::MatrixXd value;
    std::vector<Eigen::MatrixXd> d1;
    std::vector<Eigen::MatrixXd> d2;
  };
  Adjoint zero_adjoint() const;

  /// Adds d(loss)/d(theta) into `grad` (full parameter length) for layers
  /// first_layer..L. Earlier layers receive nothing.
  void backward(const ParamSet& params, const Adjoint& adjoint, std::span<double> grad,
                std::size_t first_layer = 0) const;

 private:
  // Every activation stores its channels side by side: value, then d1 per
  // active coordinate, then d2 per tracked coordinate, m columns each.
  ConstBlock channel(const Eigen::MatrixXd& a, std::size_t c) const {
    return a.middleCols(static_cast<Eigen::Index>(c) * m_, m_);
  }
  std::size_t d1_channel(std::size_t k) const { return 1 + k; }
  std::size_t d2_channel(std::size_t k) const;

  JetLayout layout_;
  std::vector<std::size_t> d2_slot_;  // channel of d2 per active coordinate, 0 when untracked
  std::size_t channels_ = 1;
  Eigen::Index m_ = 0;
  std::vector<Eigen::MatrixXd> act_;  // act_[j] is the input of weight layer j; back() is the output
  std::vector<Eigen::MatrixXd> pre_;  // pre-activations of layer j
};

/// Value-only batched forward (no derivative channels).
Eigen::MatrixXd forward_batch(const ParamSet& params, const Eigen::Ref<const Eigen::MatrixXd>& inputs);

}  // namespace mfpinn::network
