#include "mfpinn/pinn/losses.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "mfpinn/errors.hpp"
#include "mfpinn/network/network.hpp"

namespace mfpinn::pinn {

using deriv::Dual;
using deriv::Var;
using network::ParamSet;

namespace {

std::uint8_t second_mask(const network::JetLayout& layout) {
  std::uint8_t mask = 0;
  for (std::size_t k = 0; k < layout.active(); ++k) {
    if (layout.second_order[k]) mask |= static_cast<std::uint8_t>(1u << k);
  }
  return mask;
}

template <class T>
std::vector<Jet2<T>> lift_inputs(const Eigen::Ref<const Eigen::VectorXd>& column, const network::JetLayout& layout) {
  const std::uint8_t mask = second_mask(layout);
  std::vector<Jet2<T>> in;
  in.reserve(static_cast<std::size_t>(column.size()));
  for (Eigen::Index i = 0; i < column.size(); ++i) {
    Jet2<T> j(T(column[i]), layout.active(), mask);
    for (std::size_t k = 0; k < layout.active(); ++k) {
      if (layout.active_inputs[k] == static_cast<std::size_t>(i)) j.d1(k) = T(1.0);
    }
    in.push_back(j);
  }
  return in;
}

void check_network(const ParamSet& params, const ProblemSpec& problem) {
  const auto& arch = params.architecture();
  if (arch.input_width() != problem.input_width() || arch.output_width() != problem.outputs) {
    throw DomainError("network shape does not match problem '" + problem.id + "'");
  }
}

}  // namespace

PhysicsLoss::PhysicsLoss(const ProblemSpec& problem, const CollocationSet& colloc, std::size_t chunk)
    : problem_(&problem), points_(colloc.points), chunk_(std::max<std::size_t>(chunk, 1)) {
  problem.validate();
  if (static_cast<std::size_t>(points_.rows()) != problem.input_width()) {
    throw DomainError("collocation points do not match the input width of '" + problem.id + "'");
  }
  if (points_.cols() < 1) throw DomainError("physics loss needs at least one collocation point");
}

double PhysicsLoss::run(const ParamSet& params, std::span<double> grad, std::size_t first_layer,
                        Eigen::MatrixXd* residuals) const {
  check_network(params, *problem_);
  const ProblemSpec& pb = *problem_;
  const network::JetLayout layout = pb.jet_layout();
  const std::size_t na = layout.active();
  const std::uint8_t mask = second_mask(layout);
  const std::size_t outputs = pb.outputs;
  const std::size_t arity = pb.residual->arity();

  // Directions of the per-point Dual: for each raw output, its value, each
  // first derivative, then each tracked second derivative.
  std::vector<std::size_t> second;
  for (std::size_t k = 0; k < na; ++k) {
    if (layout.second_order[k]) second.push_back(k);
  }
  const std::size_t per_output = 1 + na + second.size();
  const std::size_t dirs = outputs * per_output;
  if (dirs > deriv::kMaxDualDirections) throw DomainError("physics loss: too many output channels");

  const bool want_grad = !grad.empty();
  const auto total = static_cast<std::size_t>(points_.cols());
  const double inv_n = 1.0 / static_cast<double>(total);
  if (residuals) residuals->resize(static_cast<Eigen::Index>(arity), points_.cols());

  network::BatchEvaluator ev;
  double loss = 0.0;
  std::vector<Jet2<Dual>> raw(outputs);
  std::vector<double> adj(dirs);
  for (std::size_t c0 = 0; c0 < total; c0 += chunk_) {
    const auto m = static_cast<Eigen::Index>(std::min(chunk_, total - c0));
    const auto block = points_.middleCols(static_cast<Eigen::Index>(c0), m);
    ev.forward(params, block, layout);
    network::BatchEvaluator::Adjoint bar;
    if (want_grad) bar = ev.zero_adjoint();

    double chunk_loss = 0.0;
    for (Eigen::Index p = 0; p < m; ++p) {
      const std::size_t index = c0 + static_cast<std::size_t>(p);
      std::vector<Dual> r;
      try {
        const std::vector<Jet2<Dual>> in = lift_inputs<Dual>(block.col(p), layout);
        for (std::size_t o = 0; o < outputs; ++o) {
          const auto row = static_cast<Eigen::Index>(o);
          const std::size_t base = o * per_output;
          Jet2<Dual> j(Dual::variable(ev.value()(row, p), base, dirs), na, mask);
          for (std::size_t k = 0; k < na; ++k) j.d1(k) = Dual::variable(ev.d1(k)(row, p), base + 1 + k, dirs);
          for (std::size_t s = 0; s < second.size(); ++s) {
            j.d2(second[s]) = Dual::variable(ev.d2(second[s])(row, p), base + 1 + na + s, dirs);
          }
          raw[o] = j;
        }
        const std::vector<Jet2<Dual>> u = network::apply_ansatz<Dual>(*pb.ansatz, raw, in);
        r = pb.residual->evaluate(u, in);
      } catch (const EvaluationError& e) {
        throw NumericalError("residual evaluation failed at collocation point " + std::to_string(index) + ": " +
                                 e.what(),
                             index);
      }
      std::fill(adj.begin(), adj.end(), 0.0);
      for (std::size_t k = 0; k < arity; ++k) {
        if (!std::isfinite(r[k].v)) {
          throw NumericalError("non-finite residual at collocation point " + std::to_string(index), index);
        }
        chunk_loss += r[k].v * r[k].v;
        if (residuals) (*residuals)(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(index)) = r[k].v;
        for (std::size_t d = 0; d < r[k].n; ++d) adj[d] += 2.0 * r[k].v * r[k].g[d] * inv_n;
      }
      if (!want_grad) continue;
      for (std::size_t o = 0; o < outputs; ++o) {
        const auto row = static_cast<Eigen::Index>(o);
        const std::size_t base = o * per_output;
        bar.value(row, p) = adj[base];
        for (std::size_t k = 0; k < na; ++k) bar.d1[k](row, p) = adj[base + 1 + k];
        for (std::size_t s = 0; s < second.size(); ++s) bar.d2[second[s]](row, p) = adj[base + 1 + na + s];
      }
    }
    loss += chunk_loss;
    if (want_grad) ev.backward(params, bar, grad, first_layer);
  }
  return loss * inv_n;
}

double PhysicsLoss::value(const ParamSet& params) const { return run(params, {}, 0, nullptr); }

deriv::GradRecord PhysicsLoss::evaluate(const ParamSet& params, std::size_t first_layer) const {
  deriv::GradRecord rec;
  rec.grad.assign(params.size(), 0.0);
  rec.loss_value = run(params, rec.grad, first_layer, nullptr);
  deriv::require_finite(rec);
  return rec;
}

Eigen::MatrixXd PhysicsLoss::residuals(const ParamSet& params) const {
  Eigen::MatrixXd r;
  run(params, {}, 0, &r);
  return r;
}

DataLoss::DataLoss(const ProblemSpec& problem, const HfDataset& data) : problem_(&problem) {
  problem.validate();
  if (data.outputs() != problem.outputs) throw DomainError("dataset output count does not match '" + problem.id + "'");
  inputs_ = data.inputs(problem);
  const Eigen::Index rows = inputs_.cols();
  const auto outs = static_cast<Eigen::Index>(problem.outputs);
  offset_.resize(outs, rows);
  multiplier_.resize(outs, rows);
  target_ = data.u.transpose();
  std::vector<Jet2<double>> in(problem.input_width());
  for (Eigen::Index c = 0; c < rows; ++c) {
    for (std::size_t i = 0; i < in.size(); ++i) in[i] = Jet2<double>(inputs_(static_cast<Eigen::Index>(i), c));
    for (Eigen::Index o = 0; o < outs; ++o) {
      const auto terms = problem.ansatz->terms(static_cast<std::size_t>(o), in);
      offset_(o, c) = terms.offset.value();
      multiplier_(o, c) = terms.multiplier.value();
    }
  }
}

double DataLoss::value(const ParamSet& params) const {
  check_network(params, *problem_);
  const Eigen::MatrixXd pred = offset_ + multiplier_.cwiseProduct(network::forward_batch(params, inputs_));
  return (target_ - pred).squaredNorm() / static_cast<double>(target_.size());
}

deriv::GradRecord DataLoss::evaluate(const ParamSet& params, std::size_t first_layer) const {
  check_network(params, *problem_);
  network::BatchEvaluator ev;
  ev.forward(params, inputs_, network::JetLayout{});
  const Eigen::MatrixXd diff = offset_ + multiplier_.cwiseProduct(ev.value()) - target_;
  const double n = static_cast<double>(target_.size());
  deriv::GradRecord rec;
  rec.loss_value = diff.squaredNorm() / n;
  rec.grad.assign(params.size(), 0.0);
  network::BatchEvaluator::Adjoint bar = ev.zero_adjoint();
  bar.value = (2.0 / n) * diff.cwiseProduct(multiplier_);
  ev.backward(params, bar, rec.grad, first_layer);
  deriv::require_finite(rec);
  return rec;
}

double physics_loss(const ParamSet& params, const ProblemSpec& problem, const CollocationSet& colloc) {
  return PhysicsLoss(problem, colloc).value(params);
}

double data_loss(const ParamSet& params, const ProblemSpec& problem, const HfDataset& data) {
  return DataLoss(problem, data).value(params);
}

Var physics_loss_recorded(std::span<const Var> theta, const network::Architecture& arch, const ProblemSpec& problem,
                          const CollocationSet& colloc) {
  const network::JetLayout layout = problem.jet_layout();
  Var loss(0.0);
  for (Eigen::Index p = 0; p < colloc.points.cols(); ++p) {
    const std::vector<Jet2<Var>> in = lift_inputs<Var>(colloc.points.col(p), layout);
    const std::vector<Jet2<Var>> raw = network::forward_generic<Jet2<Var>, Var>(arch, theta, in);
    const std::vector<Jet2<Var>> u = network::apply_ansatz<Var>(*problem.ansatz, raw, in);
    for (const Var& r : problem.residual->evaluate(u, in)) loss = loss + r * r;
  }
  return loss / static_cast<double>(colloc.points.cols());
}

Var data_loss_recorded(std::span<const Var> theta, const network::Architecture& arch, const ProblemSpec& problem,
                       const HfDataset& data) {
  const Eigen::MatrixXd inputs = data.inputs(problem);
  Var loss(0.0);
  for (Eigen::Index c = 0; c < inputs.cols(); ++c) {
    std::vector<Jet2<Var>> in;
    for (Eigen::Index i = 0; i < inputs.rows(); ++i) in.emplace_back(Var(inputs(i, c)));
    const std::vector<Jet2<Var>> raw = network::forward_generic<Jet2<Var>, Var>(arch, theta, in);
    const std::vector<Jet2<Var>> u = network::apply_ansatz<Var>(*problem.ansatz, raw, in);
    for (std::size_t o = 0; o < u.size(); ++o) {
      const Var d = u[o].value() - data.u(c, static_cast<Eigen::Index>(o));
      loss = loss + d * d;
    }
  }
  return loss / static_cast<double>(data.u.size());
}

}  // namespace mfpinn::pinn
