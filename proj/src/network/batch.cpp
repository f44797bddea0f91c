#include "mfpinn/network/batch.hpp"

#include "mfpinn/errors.hpp"

namespace mfpinn::network {

namespace {

using Eigen::ArrayXXd;
using Eigen::MatrixXd;

bool is_tanh(const ParamSet& p, std::size_t j) { return p.architecture().activations()[j] == Activation::kTanh; }

// Eigen's double tanh is scalar; (e - 1) / (e + 1) with e = exp(2x) vectorises
// and stays within a few ulp of 1 in absolute terms. |x| <= 20 already
// saturates to +-1 in double precision.
ArrayXXd fast_tanh(const Eigen::Ref<const MatrixXd>& x) {
  const ArrayXXd e = (2.0 * x.array().max(-20.0).min(20.0)).exp();
  return (e - 1.0) / (e + 1.0);
}

}  // namespace

std::size_t BatchEvaluator::d2_channel(std::size_t k) const {
  if (k >= d2_slot_.size() || d2_slot_[k] == 0) throw DomainError("BatchEvaluator: coordinate has no second order");
  return d2_slot_[k];
}

void BatchEvaluator::forward(const ParamSet& params, const Eigen::Ref<const MatrixXd>& inputs,
                             const JetLayout& layout) {
  const Architecture& arch = params.architecture();
  const auto n_in = static_cast<Eigen::Index>(arch.input_width());
  if (inputs.rows() != n_in) throw DomainError("BatchEvaluator: input rows must equal input width");
  if (layout.second_order.size() != layout.active_inputs.size()) {
    throw DomainError("BatchEvaluator: second_order flags must match active inputs");
  }
  for (std::size_t idx : layout.active_inputs) {
    if (idx >= arch.input_width()) throw DomainError("BatchEvaluator: active input out of range");
  }
  layout_ = layout;
  const std::size_t na = layout.active();
  d2_slot_.assign(na, 0);
  channels_ = 1 + na;
  for (std::size_t k = 0; k < na; ++k) {
    if (layout.second_order[k]) d2_slot_[k] = channels_++;
  }
  const Eigen::Index m = inputs.cols();
  m_ = m;
  const auto cm = static_cast<Eigen::Index>(channels_) * m;
  const std::size_t layers = params.layer_count();
  act_.resize(layers + 1);
  pre_.resize(layers);

  const InputMap& map = arch.input_map();
  const Eigen::Map<const Eigen::VectorXd> center(map.center.data(), n_in);
  const Eigen::Map<const Eigen::VectorXd> scale(map.scale.data(), n_in);
  MatrixXd& a0 = act_[0];
  a0.setZero(n_in, cm);
  a0.leftCols(m) = (inputs.colwise() - center).array().colwise() * scale.array();
  for (std::size_t k = 0; k < na; ++k) {
    const auto row = static_cast<Eigen::Index>(layout.active_inputs[k]);
    a0.block(row, static_cast<Eigen::Index>(d1_channel(k)) * m, 1, m).setConstant(scale[row]);
  }

  for (std::size_t j = 0; j < layers; ++j) {
    const auto w = params.matrix(j);
    const Eigen::Index in = w.cols() - 1;
    MatrixXd& p = pre_[j];
    p.resize(w.rows(), cm);
    p.noalias() = w.leftCols(in) * act_[j];
    p.leftCols(m).colwise() += w.col(in);

    MatrixXd& next = act_[j + 1];
    if (!is_tanh(params, j)) {
      next = p;
      continue;
    }
    next.resize(w.rows(), cm);
    const ArrayXXd h = fast_tanh(p.leftCols(m));
    const ArrayXXd s = 1.0 - h.square();
    next.leftCols(m) = h.matrix();
    for (std::size_t k = 0; k < na; ++k) {
      const Eigen::Index c1 = static_cast<Eigen::Index>(d1_channel(k)) * m;
      next.middleCols(c1, m) = (s * p.middleCols(c1, m).array()).matrix();
      if (d2_slot_[k]) {
        const Eigen::Index c2 = static_cast<Eigen::Index>(d2_slot_[k]) * m;
        next.middleCols(c2, m) =
            (s * (p.middleCols(c2, m).array() - 2.0 * h * p.middleCols(c1, m).array().square())).matrix();
      }
    }
  }
}

BatchEvaluator::Adjoint BatchEvaluator::zero_adjoint() const {
  const Eigen::Index rows = act_.back().rows();
  Adjoint a;
  a.value = MatrixXd::Zero(rows, m_);
  a.d1.resize(layout_.active());
  a.d2.resize(layout_.active());
  for (std::size_t k = 0; k < layout_.active(); ++k) {
    a.d1[k] = MatrixXd::Zero(rows, m_);
    if (d2_slot_[k]) a.d2[k] = MatrixXd::Zero(rows, m_);
  }
  return a;
}

void BatchEvaluator::backward(const ParamSet& params, const Adjoint& adjoint, std::span<double> grad,
                              std::size_t first_layer) const {
  if (grad.size() != params.size()) throw DomainError("BatchEvaluator::backward: gradient length mismatch");
  if (act_.size() != params.layer_count() + 1) throw DomainError("BatchEvaluator::backward: no matching forward pass");
  const std::size_t na = layout_.active();
  const Eigen::Index m = m_;
  const Eigen::Index rows = act_.back().rows();
  if (adjoint.value.rows() != rows || adjoint.value.cols() != m || adjoint.d1.size() != na) {
    throw DomainError("BatchEvaluator::backward: adjoint shape mismatch");
  }

  MatrixXd o(rows, static_cast<Eigen::Index>(channels_) * m);
  o.leftCols(m) = adjoint.value;
  for (std::size_t k = 0; k < na; ++k) {
    o.middleCols(static_cast<Eigen::Index>(d1_channel(k)) * m, m) = adjoint.d1[k];
    if (d2_slot_[k]) o.middleCols(static_cast<Eigen::Index>(d2_slot_[k]) * m, m) = adjoint.d2.at(k);
  }

  MatrixXd pbar;
  for (std::size_t j = params.layer_count(); j-- > first_layer;) {
    const auto w = params.matrix(j);
    const Eigen::Index in = w.cols() - 1;
    const MatrixXd& p = pre_[j];

    if (is_tanh(params, j)) {
      pbar.resize(o.rows(), o.cols());
      const ArrayXXd h = act_[j + 1].leftCols(m).array();
      const ArrayXXd s = 1.0 - h.square();
      const ArrayXXd sp = -2.0 * h * s;
      ArrayXXd acc = o.leftCols(m).array() * s;
      for (std::size_t k = 0; k < na; ++k) {
        const Eigen::Index c1 = static_cast<Eigen::Index>(d1_channel(k)) * m;
        const auto q1 = p.middleCols(c1, m).array();
        const auto o1 = o.middleCols(c1, m).array();
        acc += o1 * sp * q1;
        if (d2_slot_[k]) {
          const Eigen::Index c2 = static_cast<Eigen::Index>(d2_slot_[k]) * m;
          const auto o2 = o.middleCols(c2, m).array();
          const ArrayXXd spp = -2.0 * s * (s - 2.0 * h.square());
          acc += o2 * (sp * p.middleCols(c2, m).array() + spp * q1.square());
          pbar.middleCols(c1, m) = (o1 * s + 2.0 * o2 * sp * q1).matrix();
          pbar.middleCols(c2, m) = (o2 * s).matrix();
        } else {
          pbar.middleCols(c1, m) = (o1 * s).matrix();
        }
      }
      pbar.leftCols(m) = acc.matrix();
    } else {
      pbar = o;
    }

    const LayerSlice& slice = params.layer(j);
    Eigen::Map<MatrixXd> g(grad.data() + slice.offset, w.rows(), w.cols());
    g.leftCols(in).noalias() += pbar * act_[j].transpose();
    g.col(in) += pbar.leftCols(m).rowwise().sum();

    if (j > first_layer) o.noalias() = w.leftCols(in).transpose() * pbar;
  }
}

Eigen::MatrixXd forward_batch(const ParamSet& params, const Eigen::Ref<const Eigen::MatrixXd>& inputs) {
  BatchEvaluator ev;
  ev.forward(params, inputs, JetLayout{});
  return ev.value();
}

}  // namespace mfpinn::network
