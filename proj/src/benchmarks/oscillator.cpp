#include "mfpinn/benchmarks/oscillator.hpp"

#include <cmath>
#include <memory>

namespace mfpinn::benchmarks {

using deriv::Jet2;

namespace {

OdeSystem oscillator_system(double a1, double a2, bool nonlinear) {
  OdeSystem s;
  s.dimension = 2;
  s.initial = {kOscillatorX1Initial, kOscillatorX2Initial};
  s.parameters = {a1, a2};
  s.rhs = [a1, a2, nonlinear](double, std::span<const double> y, std::span<double> dy) {
    dy[0] = y[1];
    dy[1] = -a1 * y[1] - a2 * (nonlinear ? std::sin(y[0]) : y[0]);
  };
  return s;
}

constexpr std::size_t kA1 = 0;
constexpr std::size_t kA2 = 1;
constexpr std::size_t kT = 2;

struct OscillatorAnsatz final : network::AnsatzFor<OscillatorAnsatz> {
  std::size_t outputs() const override { return 2; }
  template <class T>
  network::AnsatzTerms<T> make_terms(std::size_t o, std::span<const Jet2<T>> in) const {
    return {Jet2<T>(T(o == 0 ? kOscillatorX1Initial : kOscillatorX2Initial)), in[kT]};
  }
};

struct OscillatorResidual final : pinn::ResidualFor<OscillatorResidual> {
  std::size_t arity() const override { return 2; }
  template <class T>
  std::vector<T> make(std::span<const Jet2<T>> u, std::span<const Jet2<T>> in) const {
    const T& x1 = u[0].value();
    const T& x2 = u[1].value();
    return {u[0].d1(pinn::kTimeCoord) - x2,
            u[1].d1(pinn::kTimeCoord) + in[kA1].value() * x2 + in[kA2].value() * x1};
  }
};

}  // namespace

OdeSystem oscillator_hf_system(double a1, double a2) { return oscillator_system(a1, a2, true); }
OdeSystem oscillator_lf_system(double a1, double a2) { return oscillator_system(a1, a2, false); }

pinn::ProblemSpec oscillator_problem() {
  pinn::ProblemSpec p;
  p.id = "oscillator";
  p.stochastic = {reliability::Distribution::uniform(0.0, 0.4), reliability::Distribution::uniform(8.8, 9.2)};
  p.time = {0.0, 5.0};
  p.outputs = 2;
  p.ansatz = std::make_shared<OscillatorAnsatz>();
  p.residual = std::make_shared<OscillatorResidual>();
  return p;
}

}  // namespace mfpinn::benchmarks
