#include "mfpinn/reliability/transition.hpp"

#include <cmath>

#include "mfpinn/errors.hpp"

namespace mfpinn::reliability {

namespace {

constexpr double kValueTol = 1e-10;
constexpr double kWidthTol = 1e-12;

bool opposite(double a, double b) { return (a <= 0.0 && b >= 0.0) || (a >= 0.0 && b <= 0.0); }

}  // namespace

double find_transition_layer(const std::function<double(double)>& u, double lo, double hi) {
  if (!(lo < hi)) throw DomainError("find_transition_layer: need lo < hi");
  double ulo = u(lo);
  const double uhi = u(hi);
  if (!std::isfinite(ulo) || !std::isfinite(uhi)) throw NumericalError("transition layer: non-finite endpoint", 0);
  if (std::abs(ulo) <= kValueTol) return lo;
  if (std::abs(uhi) <= kValueTol) return hi;
  if (!opposite(ulo, uhi)) throw BracketError("transition layer: no sign change on the interval");
  while (hi - lo > kWidthTol) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    const double um = u(mid);
    if (!std::isfinite(um)) throw NumericalError("transition layer: non-finite value inside the bracket", 0);
    if (std::abs(um) <= kValueTol) return mid;
    if (opposite(ulo, um)) {
      hi = mid;
    } else {
      lo = mid;
      ulo = um;
    }
  }
  return 0.5 * (lo + hi);
}

TransitionBatch find_transition_layers(const std::function<std::vector<double>(const std::vector<double>&)>& u,
                                       std::size_t count, double lo, double hi) {
  if (!(lo < hi)) throw DomainError("find_transition_layers: need lo < hi");
  std::vector<double> a(count, lo), b(count, hi);
  std::vector<double> ua = u(a);
  const std::vector<double> ub = u(b);
  if (ua.size() != count || ub.size() != count) throw DomainError("transition profile returned the wrong size");

  TransitionBatch out;
  out.z.assign(count, std::nullopt);
  std::vector<char> open(count, 0);
  for (std::size_t i = 0; i < count; ++i) {
    if (!std::isfinite(ua[i]) || !std::isfinite(ub[i])) throw NumericalError("transition layer: non-finite endpoint", i);
    if (std::abs(ua[i]) <= kValueTol) {
      out.z[i] = lo;
    } else if (std::abs(ub[i]) <= kValueTol) {
      out.z[i] = hi;
    } else if (opposite(ua[i], ub[i])) {
      open[i] = 1;
    } else {
      ++out.unbracketed;
    }
  }

  // Every open bracket halves each round, so the width test retires them
  // all after the same number of rounds.
  std::vector<double> mid(count);
  for (double width = hi - lo; width > kWidthTol; width *= 0.5) {
    for (std::size_t i = 0; i < count; ++i) mid[i] = 0.5 * (a[i] + b[i]);
    const std::vector<double> um = u(mid);
    for (std::size_t i = 0; i < count; ++i) {
      if (!open[i]) continue;
      if (!std::isfinite(um[i])) throw NumericalError("transition layer: non-finite value inside the bracket", i);
      if (std::abs(um[i]) <= kValueTol) {
        out.z[i] = mid[i];
        open[i] = 0;
      } else if (opposite(ua[i], um[i])) {
        b[i] = mid[i];
      } else {
        a[i] = mid[i];
        ua[i] = um[i];
      }
    }
  }
  for (std::size_t i = 0; i < count; ++i) {
    if (open[i]) out.z[i] = 0.5 * (a[i] + b[i]);
  }
  return out;
}

double transition_on_grid(const std::vector<double>& x, const std::vector<double>& u) {
  if (x.size() != u.size() || x.size() < 2) throw DomainError("transition_on_grid: need matching profiles of length >= 2");
  for (std::size_t i = 0; i + 1 < x.size(); ++i) {
    if (u[i] == 0.0) return x[i];
    if ((u[i] > 0.0) != (u[i + 1] > 0.0)) {
      return x[i] + (x[i + 1] - x[i]) * u[i] / (u[i] - u[i + 1]);
    }
  }
  if (u.back() == 0.0) return x.back();
  throw BracketError("transition_on_grid: profile has no sign change");
}

}  // namespace mfpinn::reliability
