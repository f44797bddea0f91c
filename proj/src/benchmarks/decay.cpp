#include "mfpinn/benchmarks/decay.hpp"

#include <cmath>
#include <memory>

namespace mfpinn::benchmarks {

using deriv::Jet2;

double decay_lf_solution(double z, double t) { return std::exp(-z * t); }

double decay_hf_response(double z, double t) {
  const double ul = decay_lf_solution(z, t);
  const double g = 4.0 * std::log(ul);
  return t * std::sin(t) * g * g + 15.0 * t * t * t + 1.0;
}

namespace {

constexpr std::size_t kZ = 0;
constexpr std::size_t kT = 1;

struct DecayAnsatz final : network::AnsatzFor<DecayAnsatz> {
  std::size_t outputs() const override { return 1; }
  template <class T>
  network::AnsatzTerms<T> make_terms(std::size_t, std::span<const Jet2<T>> in) const {
    return {Jet2<T>(T(1.0)), in[kT]};
  }
};

struct DecayResidual final : pinn::ResidualFor<DecayResidual> {
  std::size_t arity() const override { return 1; }
  template <class T>
  std::vector<T> make(std::span<const Jet2<T>> u, std::span<const Jet2<T>> in) const {
    return {u[0].d1(pinn::kTimeCoord) + in[kZ].value() * u[0].value()};
  }
};

}  // namespace

pinn::ProblemSpec decay_problem() {
  pinn::ProblemSpec p;
  p.id = "decay_ode";
  p.stochastic = {reliability::Distribution::normal(-2.0, 1.0)};
  p.time = {0.0, 1.0};
  p.outputs = 1;
  p.ansatz = std::make_shared<DecayAnsatz>();
  p.residual = std::make_shared<DecayResidual>();
  return p;
}

}  // namespace mfpinn::benchmarks
