#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "mfpinn/deriv/jet2.hpp"
#include "mfpinn/errors.hpp"
#include "mfpinn/network/param_set.hpp"

namespace mfpinn::network {

using deriv::Jet2;

namespace detail {

template <class S>
S activate(Activation a, const S& x) {
  using std::tanh;
  using deriv::tanh;
  return a == Activation::kTanh ? tanh(x) : x;
}

}  // namespace detail

/// Evaluates the network on one point. `S` is the carried scalar (double or a
/// jet); `P` the parameter scalar (double, or deriv::Var when the parameters
/// are being recorded). Accumulation order is fixed: bias first, then inputs
/// in index order.
template <class S, class P>
std::vector<S> forward_generic(const Architecture& arch, std::span<const P> theta, std::span<const S> inputs) {
  if (inputs.size() != arch.input_width()) throw DomainError("forward: input length does not match input width");
  if (theta.size() != arch.parameter_count()) throw DomainError("forward: parameter vector length mismatch");
  const InputMap& map = arch.input_map();
  std::vector<S> h;
  h.reserve(inputs.size());
  for (std::size_t i = 0; i < inputs.size(); ++i) h.push_back((inputs[i] - map.center[i]) * map.scale[i]);

  std::size_t offset = 0;
  for (std::size_t j = 0; j < arch.layer_count(); ++j) {
    const std::size_t rows = arch.fan_out(j);
    const std::size_t cols = arch.fan_in(j) + 1;
    std::vector<S> next;
    next.reserve(rows);
    for (std::size_t r = 0; r < rows; ++r) {
      S acc = S(theta[offset + (cols - 1) * rows + r]);
      for (std::size_t c = 0; c + 1 < cols; ++c) acc = acc + h[c] * theta[offset + c * rows + r];
      next.push_back(detail::activate(arch.activations()[j], acc));
    }
    h = std::move(next);
    offset += rows * cols;
  }
  return h;
}

/// Plain network evaluation.
std::vector<double> forward(const ParamSet& params, std::span<const double> inputs);

/// Network evaluation carrying input derivatives. All input jets must share
/// one lift layout. The value channel equals forward() bitwise.
std::vector<Jet2<double>> forward_jet(const ParamSet& params, std::span<const Jet2<double>> inputs);

/// Xavier/Glorot-uniform weights on +-sqrt(6 / (fan_in + fan_out)), zero
/// biases, nothing frozen.
ParamSet xavier_init(const Architecture& arch, std::uint64_t seed);

// ---------------------------------------------------------------------------
// Boundary/initial-condition ansatz: u_hat = u_b + B * u_NN per output.

template <class T>
struct AnsatzTerms {
  Jet2<T> offset;      // u_b
  Jet2<T> multiplier;  // B, zero on initial/boundary points
};

/// Closed-form u_b and B per output channel, as functions of the full input
/// vector (stochastic inputs, space, time). Implementations must build both
/// from jet arithmetic so derivative channels flow.
class AnsatzSpec {
 public:
  virtual ~AnsatzSpec() = default;
  virtual std::size_t outputs() const = 0;
  virtual AnsatzTerms<double> terms(std::size_t output, std::span<const Jet2<double>> inputs) const = 0;
  virtual AnsatzTerms<deriv::Dual> terms(std::size_t output, std::span<const Jet2<deriv::Dual>> inputs) const = 0;
  virtual AnsatzTerms<deriv::Var> terms(std::size_t output, std::span<const Jet2<deriv::Var>> inputs) const = 0;
};

/// Implements the three scalar overloads from one member template
/// `make_terms<T>(output, inputs)` of Derived.
template <class Derived>
class AnsatzFor : public AnsatzSpec {
 public:
  AnsatzTerms<double> terms(std::size_t o, std::span<const Jet2<double>> in) const override {
    return self().template make_terms<double>(o, in);
  }
  AnsatzTerms<deriv::Dual> terms(std::size_t o, std::span<const Jet2<deriv::Dual>> in) const override {
    return self().template make_terms<deriv::Dual>(o, in);
  }
  AnsatzTerms<deriv::Var> terms(std::size_t o, std::span<const Jet2<deriv::Var>> in) const override {
    return self().template make_terms<deriv::Var>(o, in);
  }

 private:
  const Derived& self() const { return static_cast<const Derived&>(*this); }
};

/// u_hat_o = u_b,o + B_o * raw_o for every output channel.
template <class T>
std::vector<Jet2<T>> apply_ansatz(const AnsatzSpec& spec, std::span<const Jet2<T>> raw,
                                  std::span<const Jet2<T>> inputs) {
  if (raw.size() != spec.outputs()) throw DomainError("apply_ansatz: output arity mismatch");
  std::vector<Jet2<T>> out;
  out.reserve(raw.size());
  for (std::size_t o = 0; o < raw.size(); ++o) {
    const AnsatzTerms<T> t = spec.terms(o, inputs);
    out.push_back(t.offset + t.multiplier * raw[o]);
  }
  return out;
}

}  // namespace mfpinn::network
