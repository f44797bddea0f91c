#pragma once

#include <cstddef>
#include <span>

#include <Eigen/Core>

#include "mfpinn/deriv/grad.hpp"
#include "mfpinn/network/batch.hpp"
#include "mfpinn/pinn/collocation.hpp"
#include "mfpinn/pinn/hf_dataset.hpp"
#include "mfpinn/pinn/problem.hpp"

namespace mfpinn::pinn {

/// Mean over collocation points of the summed squared residual components.
///
/// Points are processed in fixed-size chunks through the batched network;
/// per point, the ansatz and residual are differentiated with respect to
/// the raw output channels (value and derivative channels) and the result
/// is swept back through the network. Chunk results are reduced in order.
class PhysicsLoss {
 public:
  PhysicsLoss(const ProblemSpec& problem, const CollocationSet& colloc, std::size_t chunk = 64);

  double value(const network::ParamSet& params) const;
  /// Gradient entries of layers before `first_layer` are left at zero.
  deriv::GradRecord evaluate(const network::ParamSet& params, std::size_t first_layer = 0) const;
  /// Residual components, arity x N.
  Eigen::MatrixXd residuals(const network::ParamSet& params) const;

  std::size_t points() const noexcept { return static_cast<std::size_t>(points_.cols()); }

 private:
  double run(const network::ParamSet& params, std::span<double> grad, std::size_t first_layer,
             Eigen::MatrixXd* residuals) const;

  const ProblemSpec* problem_;
  Eigen::MatrixXd points_;
  std::size_t chunk_;
};

/// Mean over all observations and output channels of (u - u_hat)^2.
class DataLoss {
 public:
  DataLoss(const ProblemSpec& problem, const HfDataset& data);

  double value(const network::ParamSet& params) const;
  deriv::GradRecord evaluate(const network::ParamSet& params, std::size_t first_layer = 0) const;

  std::size_t observations() const noexcept { return static_cast<std::size_t>(target_.size()); }

 private:
  const ProblemSpec* problem_;
  Eigen::MatrixXd inputs_;      // input width x rows
  Eigen::MatrixXd offset_;      // outputs x rows
  Eigen::MatrixXd multiplier_;  // outputs x rows
  Eigen::MatrixXd target_;      // outputs x rows
};

double physics_loss(const network::ParamSet& params, const ProblemSpec& problem, const CollocationSet& colloc);
double data_loss(const network::ParamSet& params, const ProblemSpec& problem, const HfDataset& data);

/// The same losses written against recorded parameters, evaluated point by
/// point through the generic forward pass. Used as an independent
/// reference for the batched gradients.
deriv::Var physics_loss_recorded(std::span<const deriv::Var> theta, const network::Architecture& arch,
                                 const ProblemSpec& problem, const CollocationSet& colloc);
deriv::Var data_loss_recorded(std::span<const deriv::Var> theta, const network::Architecture& arch,
                              const ProblemSpec& problem, const HfDataset& data);

}  // namespace mfpinn::pinn
