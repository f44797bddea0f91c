#include "mfpinn/pinn/problem.hpp"

#include "mfpinn/errors.hpp"

namespace mfpinn::pinn {

network::JetLayout ProblemSpec::jet_layout() const {
  network::JetLayout layout;
  layout.active_inputs.push_back(time_index());
  layout.second_order.push_back(false);
  if (space) {
    layout.active_inputs.push_back(space_index());
    layout.second_order.push_back(true);
  }
  return layout;
}

network::InputMap ProblemSpec::default_input_map() const {
  std::vector<double> lo, hi;
  for (const auto& d : stochastic) {
    if (d.kind() == reliability::Distribution::Kind::kUniform) {
      lo.push_back(d.first());
      hi.push_back(d.second());
    } else {
      lo.push_back(d.first() - 3.0 * d.second());
      hi.push_back(d.first() + 3.0 * d.second());
    }
  }
  if (space) {
    lo.push_back(space->lo);
    hi.push_back(space->hi);
  }
  lo.push_back(time.lo);
  hi.push_back(time.hi);
  return network::InputMap::from_bounds(lo, hi);
}

network::Architecture ProblemSpec::architecture(std::size_t hidden_layers, std::size_t width) const {
  network::Architecture arch = network::Architecture::fully_connected(input_width(), hidden_layers, width, outputs);
  arch.with_input_map(default_input_map());
  return arch;
}

void ProblemSpec::validate() const {
  if (!ansatz || !residual) throw DomainError("problem '" + id + "': ansatz and residual are required");
  if (ansatz->outputs() != outputs) throw DomainError("problem '" + id + "': ansatz output count mismatch");
  if (!(time.lo < time.hi)) throw DomainError("problem '" + id + "': empty time interval");
  if (space && !(space->lo < space->hi)) throw DomainError("problem '" + id + "': empty space interval");
}

Eigen::MatrixXd predict(const network::ParamSet& params, const ProblemSpec& problem,
                        const Eigen::Ref<const Eigen::MatrixXd>& inputs) {
  if (params.architecture().input_width() != problem.input_width() ||
      params.architecture().output_width() != problem.outputs) {
    throw DomainError("predict: network shape does not match problem '" + problem.id + "'");
  }
  Eigen::MatrixXd out = network::forward_batch(params, inputs);
  std::vector<Jet2<double>> in(problem.input_width());
  for (Eigen::Index c = 0; c < inputs.cols(); ++c) {
    for (std::size_t i = 0; i < in.size(); ++i) in[i] = Jet2<double>(inputs(static_cast<Eigen::Index>(i), c));
    for (std::size_t o = 0; o < problem.outputs; ++o) {
      const auto terms = problem.ansatz->terms(o, in);
      const auto row = static_cast<Eigen::Index>(o);
      out(row, c) = terms.offset.value() + terms.multiplier.value() * out(row, c);
    }
  }
  return out;
}

Eigen::VectorXd make_input(const ProblemSpec& problem, std::span<const double> xi, std::optional<double> x,
                           double t) {
  if (xi.size() != problem.stochastic_dims()) throw DomainError("make_input: stochastic dimension mismatch");
  if (x.has_value() != problem.space.has_value()) throw DomainError("make_input: spatial coordinate mismatch");
  Eigen::VectorXd v(static_cast<Eigen::Index>(problem.input_width()));
  for (std::size_t i = 0; i < xi.size(); ++i) v[static_cast<Eigen::Index>(i)] = xi[i];
  if (x) v[static_cast<Eigen::Index>(problem.space_index())] = *x;
  v[static_cast<Eigen::Index>(problem.time_index())] = t;
  return v;
}

Eigen::MatrixXd inputs_for_samples(const ProblemSpec& problem, const Eigen::MatrixXd& samples,
                                   std::optional<double> x, double t) {
  if (static_cast<std::size_t>(samples.cols()) != problem.stochastic_dims()) {
    throw DomainError("inputs_for_samples: stochastic dimension mismatch");
  }
  if (x.has_value() != problem.space.has_value()) throw DomainError("inputs_for_samples: spatial coordinate mismatch");
  Eigen::MatrixXd in(static_cast<Eigen::Index>(problem.input_width()), samples.rows());
  in.topRows(samples.cols()) = samples.transpose();
  if (x) in.row(static_cast<Eigen::Index>(problem.space_index())).setConstant(*x);
  in.row(static_cast<Eigen::Index>(problem.time_index())).setConstant(t);
  return in;
}

}  // namespace mfpinn::pinn
