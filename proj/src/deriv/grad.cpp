#include "mfpinn/deriv/grad.hpp"

#include <cmath>

#include "mfpinn/errors.hpp"

namespace mfpinn::deriv {

void require_finite(const GradRecord& record) {
  if (!std::isfinite(record.loss_value)) throw NumericalError("non-finite loss value", 0);
  for (std::size_t i = 0; i < record.grad.size(); ++i) {
    if (!std::isfinite(record.grad[i])) throw NumericalError("non-finite gradient component", i);
  }
}

GradRecord param_gradient(const RecordedLoss& loss_eval, std::span<const double> params) {
  Tape tape;
  std::vector<Var> theta;
  theta.reserve(params.size());
  for (double p : params) theta.push_back(tape.variable(p));

  const Var loss = loss_eval(theta);
  const std::vector<double> adj = tape.adjoints(loss);

  GradRecord out;
  out.loss_value = loss.value();
  out.grad.resize(params.size());
  // Parameters were recorded first, so their nodes are 0..n-1.
  for (std::size_t i = 0; i < params.size(); ++i) out.grad[i] = adj[i];
  require_finite(out);
  return out;
}

}  // namespace mfpinn::deriv
