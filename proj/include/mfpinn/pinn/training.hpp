#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>

#include "mfpinn/network/param_set.hpp"
#include "mfpinn/optim/lbfgs.hpp"
#include "mfpinn/optim/trace.hpp"
#include "mfpinn/pinn/collocation.hpp"
#include "mfpinn/pinn/hf_dataset.hpp"
#include "mfpinn/pinn/problem.hpp"

namespace mfpinn::pinn {

/// RMSProp iterations at a fixed learning rate, then at most
/// `lbfgs_iterations` L-BFGS iterations.
struct PhaseBudget {
  std::size_t rmsprop_iterations = 0;
  double learning_rate = 1e-3;
  std::size_t lbfgs_iterations = 0;
  std::size_t lbfgs_memory = 10;
};

struct TrainResult {
  network::ParamSet params;
  optim::TrainingLog log;
  double final_loss = 0.0;
  std::optional<optim::LbfgsTermination> lbfgs_reason;
};

/// Xavier initialisation from `seed`, then the budgeted phases on the
/// physics loss. The returned parameters have every layer tunable.
TrainResult train_low_fidelity(const ProblemSpec& problem, const network::Architecture& arch,
                               const CollocationSet& colloc, const PhaseBudget& budget, std::uint64_t seed);

/// Layer-freezing update on high-fidelity data. Both phases start from
/// theta_l; only the trailing `tunable_layers` layers move during RMSProp,
/// and only the trailing `lbfgs_tunable_layers` (default: the same set)
/// during L-BFGS. The optimizer state starts fresh.
struct TransferConfig {
  std::size_t tunable_layers = 2;
  PhaseBudget budget;
  std::optional<std::size_t> lbfgs_tunable_layers;

  /// DomainError unless 1 <= tunable_layers <= layer_count and
  /// 1 <= lbfgs_tunable_layers <= tunable_layers.
  void validate(std::size_t layer_count) const;
};

/// The returned parameters carry the freeze mask of the RMSProp phase.
TrainResult transfer_update(const network::ParamSet& theta_l, const ProblemSpec& problem, const HfDataset& data,
                            const TransferConfig& config);

/// Data-only baseline: same architecture and ansatz, Xavier initialisation,
/// all layers trained on the data loss.
TrainResult train_data_only(const ProblemSpec& problem, const network::Architecture& arch, const HfDataset& data,
                            const PhaseBudget& budget, std::uint64_t seed);

}  // namespace mfpinn::pinn
