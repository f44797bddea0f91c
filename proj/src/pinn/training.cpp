#include "mfpinn/pinn/training.hpp"

#include "mfpinn/errors.hpp"
#include "mfpinn/network/network.hpp"
#include "mfpinn/optim/rmsprop.hpp"
#include "mfpinn/pinn/losses.hpp"

namespace mfpinn::pinn {

namespace {

template <class Loss>
void run_phases(const Loss& loss, network::ParamSet& params, const PhaseBudget& budget, TrainResult& result,
                const char* rms_phase, const char* lbfgs_phase,
                const std::optional<std::size_t>& lbfgs_trailing = std::nullopt) {
  const optim::ParamObjective objective = [&loss](const network::ParamSet& p) {
    return loss.evaluate(p, p.first_tunable_layer());
  };
  if (budget.rmsprop_iterations > 0) {
    optim::RmsPropState state = optim::RmsPropState::fresh(params, budget.learning_rate);
    optim::run_rmsprop(objective, params, state, budget.rmsprop_iterations, &result.log, rms_phase);
  }
  if (budget.lbfgs_iterations > 0) {
    const std::vector<bool> mask = params.freeze_mask();
    if (lbfgs_trailing) params.set_trailing_tunable(*lbfgs_trailing);
    optim::LbfgsConfig cfg;
    cfg.max_iterations = budget.lbfgs_iterations;
    cfg.memory = budget.lbfgs_memory;
    const optim::LbfgsResult r = optim::lbfgs_minimize(objective, params, cfg, &result.log, lbfgs_phase);
    result.lbfgs_reason = r.reason;
    params.set_freeze_mask(mask);
  }
  result.final_loss = loss.value(params);
}

}  // namespace

TrainResult train_low_fidelity(const ProblemSpec& problem, const network::Architecture& arch,
                               const CollocationSet& colloc, const PhaseBudget& budget, std::uint64_t seed) {
  const PhysicsLoss loss(problem, colloc);
  TrainResult result;
  result.params = network::xavier_init(arch, seed);
  run_phases(loss, result.params, budget, result, "lf_rmsprop", "lf_lbfgs");
  result.params.unfreeze_all();
  return result;
}

void TransferConfig::validate(std::size_t layer_count) const {
  if (tunable_layers < 1 || tunable_layers > layer_count) {
    throw DomainError("transfer: tunable layer count must lie in [1, " + std::to_string(layer_count) + "]");
  }
  if (lbfgs_tunable_layers && (*lbfgs_tunable_layers < 1 || *lbfgs_tunable_layers > tunable_layers)) {
    throw DomainError("transfer: L-BFGS tunable layer count must lie in [1, " + std::to_string(tunable_layers) + "]");
  }
}

TrainResult transfer_update(const network::ParamSet& theta_l, const ProblemSpec& problem, const HfDataset& data,
                            const TransferConfig& config) {
  config.validate(theta_l.layer_count());
  const DataLoss loss(problem, data);
  TrainResult result;
  result.params = theta_l;
  result.params.set_trailing_tunable(config.tunable_layers);
  run_phases(loss, result.params, config.budget, result, "tl_rmsprop", "tl_lbfgs", config.lbfgs_tunable_layers);
  return result;
}

TrainResult train_data_only(const ProblemSpec& problem, const network::Architecture& arch, const HfDataset& data,
                            const PhaseBudget& budget, std::uint64_t seed) {
  const DataLoss loss(problem, data);
  TrainResult result;
  result.params = network::xavier_init(arch, seed);
  run_phases(loss, result.params, budget, result, "hf_rmsprop", "hf_lbfgs");
  return result;
}

}  // namespace mfpinn::pinn
