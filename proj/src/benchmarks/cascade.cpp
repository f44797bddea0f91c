#include "mfpinn/benchmarks/cascade.hpp"

#include <memory>

#include "mfpinn/errors.hpp"

namespace mfpinn::benchmarks {

using deriv::Jet2;

CascadeParams CascadeParams::means() {
  CascadeParams p;
  p.km.fill(0.2);
  p.vmax = {0.5, 0.15, 0.15, 0.15, 0.25, 0.05};
  p.g4 = 2.0;
  return p;
}

CascadeParams CascadeParams::from_vector(std::span<const double> xi) {
  if (xi.size() != kCascadeParameters) throw DomainError("cascade: expected 13 parameters");
  CascadeParams p;
  for (std::size_t i = 0; i < 6; ++i) {
    p.km[i] = xi[i];
    p.vmax[i] = xi[6 + i];
  }
  p.g4 = xi[12];
  return p;
}

std::array<double, kCascadeParameters> CascadeParams::to_vector() const {
  std::array<double, kCascadeParameters> v{};
  for (std::size_t i = 0; i < 6; ++i) {
    v[i] = km[i];
    v[6 + i] = vmax[i];
  }
  v[12] = g4;
  return v;
}

std::array<double, 3> cascade_rhs(const std::array<double, 3>& e, const CascadeParams& p, double input) {
  const auto& km = p.km;
  const auto& vm = p.vmax;
  const double drive = input / (1.0 + p.g4 * e[2]) * vm[0] * (1.0 - e[0]) / (km[0] + (1.0 - e[0]));
  return {drive - vm[1] * e[0] / (km[1] + e[0]),
          vm[2] * e[0] * (1.0 - e[1]) / (km[2] + (1.0 - e[1])) - vm[3] * e[1] / (km[3] + e[1]),
          vm[4] * e[1] * (1.0 - e[2]) / (km[4] + (1.0 - e[2])) - vm[5] * e[2] / (km[5] + e[2])};
}

OdeSystem cascade_system(const CascadeParams& p, double input) {
  OdeSystem s;
  s.dimension = 3;
  s.initial = {0.0, 1.0, 0.0};
  const auto v = p.to_vector();
  s.parameters.assign(v.begin(), v.end());
  s.parameters.push_back(input);
  s.rhs = [p, input](double, std::span<const double> y, std::span<double> dy) {
    const auto d = cascade_rhs({y[0], y[1], y[2]}, p, input);
    dy[0] = d[0];
    dy[1] = d[1];
    dy[2] = d[2];
  };
  return s;
}

namespace {

constexpr std::size_t kT = kCascadeParameters;

struct CascadeAnsatz final : network::AnsatzFor<CascadeAnsatz> {
  std::size_t outputs() const override { return 3; }
  template <class T>
  network::AnsatzTerms<T> make_terms(std::size_t o, std::span<const Jet2<T>> in) const {
    return {Jet2<T>(T(o == 1 ? 1.0 : 0.0)), in[kT]};
  }
};

// Stage k is driven by stage k-1 and has constants K_m,(2k-1), K_m,2k and
// V_max,(2k-1), V_max,2k; the first stage has no driver when I = 0.
struct CascadeResidual final : pinn::ResidualFor<CascadeResidual> {
  std::size_t arity() const override { return 3; }
  template <class T>
  std::vector<T> make(std::span<const Jet2<T>> u, std::span<const Jet2<T>> in) const {
    auto km = [&](std::size_t i) -> const T& { return in[i - 1].value(); };
    auto vm = [&](std::size_t i) -> const T& { return in[5 + i].value(); };
    const T& e1 = u[0].value();
    const T& e2 = u[1].value();
    const T& e3 = u[2].value();
    const T& e1t = u[0].d1(pinn::kTimeCoord);
    const T& e2t = u[1].d1(pinn::kTimeCoord);
    const T& e3t = u[2].d1(pinn::kTimeCoord);
    const T one(1.0);

    const T r1 = (km(2) + e1) * e1t + vm(2) * e1;
    const T r2 = (km(3) + one - e2) * (km(4) + e2) * e2t - vm(3) * e1 * (one - e2) * (km(4) + e2) +
                 vm(4) * e2 * (km(3) + one - e2);
    const T r3 = (km(5) + one - e3) * (km(6) + e3) * e3t - vm(5) * e2 * (one - e3) * (km(6) + e3) +
                 vm(6) * e3 * (km(5) + one - e3);
    return {r1, r2, r3};
  }
};

}  // namespace

pinn::ProblemSpec cascade_problem() {
  pinn::ProblemSpec p;
  p.id = "cascade";
  for (double m : CascadeParams::means().to_vector()) {
    p.stochastic.push_back(reliability::Distribution::uniform(0.9 * m, 1.1 * m));
  }
  p.time = {0.0, 10.0};
  p.outputs = 3;
  p.ansatz = std::make_shared<CascadeAnsatz>();
  p.residual = std::make_shared<CascadeResidual>();
  return p;
}

}  // namespace mfpinn::benchmarks
