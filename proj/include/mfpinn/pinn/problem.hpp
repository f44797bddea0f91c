#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "mfpinn/network/batch.hpp"
#include "mfpinn/network/network.hpp"
#include "mfpinn/reliability/distribution.hpp"

namespace mfpinn::pinn {

using deriv::Jet2;

struct Interval {
  double lo = 0.0;
  double hi = 1.0;
  bool contains(double v) const noexcept { return v >= lo && v <= hi; }
};

/// Active derivative coordinates, in this order whenever present.
inline constexpr std::size_t kTimeCoord = 0;
inline constexpr std::size_t kSpaceCoord = 1;

/// Residual components of the governing equation at one point. `u` holds
/// the ansatz outputs as jets (time derivative in coordinate 0, space
/// derivatives in coordinate 1); `inputs` holds the raw inputs
/// [xi..., x?, t] as jets of the same layout. Returns the residual values.
class ResidualSpec {
 public:
  virtual ~ResidualSpec() = default;
  virtual std::size_t arity() const = 0;
  virtual std::vector<double> evaluate(std::span<const Jet2<double>> u,
                                       std::span<const Jet2<double>> inputs) const = 0;
  virtual std::vector<deriv::Dual> evaluate(std::span<const Jet2<deriv::Dual>> u,
                                            std::span<const Jet2<deriv::Dual>> inputs) const = 0;
  virtual std::vector<deriv::Var> evaluate(std::span<const Jet2<deriv::Var>> u,
                                           std::span<const Jet2<deriv::Var>> inputs) const = 0;
};

/// Implements the three overloads from `Derived::make<T>(u, inputs)`.
template <class Derived>
class ResidualFor : public ResidualSpec {
 public:
  std::vector<double> evaluate(std::span<const Jet2<double>> u, std::span<const Jet2<double>> in) const override {
    return self().template make<double>(u, in);
  }
  std::vector<deriv::Dual> evaluate(std::span<const Jet2<deriv::Dual>> u,
                                    std::span<const Jet2<deriv::Dual>> in) const override {
    return self().template make<deriv::Dual>(u, in);
  }
  std::vector<deriv::Var> evaluate(std::span<const Jet2<deriv::Var>> u,
                                   std::span<const Jet2<deriv::Var>> in) const override {
    return self().template make<deriv::Var>(u, in);
  }

 private:
  const Derived& self() const { return static_cast<const Derived&>(*this); }
};

/// Stochastic inputs, space-time domain, boundary/initial ansatz and
/// low-fidelity residual of one problem. Network inputs are laid out as
/// [xi_1..xi_N, x (when spatial), t].
struct ProblemSpec {
  std::string id;
  std::vector<reliability::Distribution> stochastic;
  std::optional<Interval> space;
  Interval time;
  std::size_t outputs = 1;
  std::shared_ptr<const network::AnsatzSpec> ansatz;
  std::shared_ptr<const ResidualSpec> residual;

  std::size_t stochastic_dims() const noexcept { return stochastic.size(); }
  std::size_t input_width() const noexcept { return stochastic.size() + (space ? 1 : 0) + 1; }
  std::size_t time_index() const noexcept { return input_width() - 1; }
  /// Only valid when `space` is set.
  std::size_t space_index() const noexcept { return stochastic.size(); }

  /// [t] or [t, x] with second order on x.
  network::JetLayout jet_layout() const;
  /// Maps the collocation box onto [-1, 1] per input. Normal inputs use
  /// mean +- 3 sigma.
  network::InputMap default_input_map() const;
  network::Architecture architecture(std::size_t hidden_layers, std::size_t width) const;

  void validate() const;
};

/// Surrogate output u_hat for every column of `inputs` (input_width x m).
/// Returns outputs x m.
Eigen::MatrixXd predict(const network::ParamSet& params, const ProblemSpec& problem,
                        const Eigen::Ref<const Eigen::MatrixXd>& inputs);

/// Column of network inputs for stochastic sample `xi`, location x and time t.
Eigen::VectorXd make_input(const ProblemSpec& problem, std::span<const double> xi, std::optional<double> x,
                           double t);

/// Input matrix with one column per row of `samples` at fixed (x, t).
Eigen::MatrixXd inputs_for_samples(const ProblemSpec& problem, const Eigen::MatrixXd& samples,
                                   std::optional<double> x, double t);

}  // namespace mfpinn::pinn
