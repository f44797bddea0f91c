#include "mfpinn/benchmarks/surrogate.hpp"

#include <cmath>
#include <string>

#include "mfpinn/errors.hpp"
#include "mfpinn/pinn/problem.hpp"
#include "mfpinn/reliability/transition.hpp"

namespace mfpinn::benchmarks {

std::vector<double> surrogate_responses(const BenchmarkDef& def, const network::ParamSet& params,
                                        const Eigen::MatrixXd& samples, double t) {
  const pinn::ProblemSpec& pb = def.problem;
  const auto out_row = static_cast<Eigen::Index>(def.response.output);
  const auto n = static_cast<std::size_t>(samples.rows());
  std::vector<double> out(n);

  if (def.response.kind == ResponseSpec::Kind::kTransitionLayer) {
    if (!pb.space) throw DomainError("transition layer requested for a problem without space");
    Eigen::MatrixXd in = pinn::inputs_for_samples(pb, samples, pb.space->lo, t);
    const auto xrow = static_cast<Eigen::Index>(pb.space_index());
    auto profile = [&](const std::vector<double>& x) {
      for (std::size_t i = 0; i < n; ++i) in(xrow, static_cast<Eigen::Index>(i)) = x[i];
      const Eigen::MatrixXd u = pinn::predict(params, pb, in);
      std::vector<double> v(n);
      for (std::size_t i = 0; i < n; ++i) v[i] = u(out_row, static_cast<Eigen::Index>(i));
      return v;
    };
    const reliability::TransitionBatch z = reliability::find_transition_layers(profile, n, pb.space->lo, pb.space->hi);
    for (std::size_t i = 0; i < n; ++i) {
      if (!z.z[i]) throw BracketError("surrogate profile has no sign change for sample " + std::to_string(i));
      out[i] = *z.z[i];
    }
    return out;
  }

  std::optional<double> x;
  if (pb.space) x = 0.5 * (pb.space->lo + pb.space->hi);
  const Eigen::MatrixXd u = pinn::predict(params, pb, pinn::inputs_for_samples(pb, samples, x, t));
  for (std::size_t i = 0; i < n; ++i) {
    const double v = u(out_row, static_cast<Eigen::Index>(i));
    out[i] = def.response.kind == ResponseSpec::Kind::kAbsOutput ? std::abs(v) : v;
  }
  return out;
}

reliability::ResponseFn surrogate_response_fn(const BenchmarkDef& def, const network::ParamSet& params) {
  return [def, params](const Eigen::MatrixXd& samples, double t) { return surrogate_responses(def, params, samples, t); };
}

}  // namespace mfpinn::benchmarks
