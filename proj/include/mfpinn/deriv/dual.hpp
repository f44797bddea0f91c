#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <cstdint>

#include "mfpinn/errors.hpp"

namespace mfpinn::deriv {

inline constexpr std::size_t kMaxDualDirections = 16;

/// First-order forward-mode number with a small, runtime-sized tangent
/// vector. Used to differentiate per-point residual expressions with respect
/// to the raw network output channels.
struct Dual {
  double v = 0.0;
  std::array<double, kMaxDualDirections> g{};
  std::uint8_t n = 0;

  Dual() = default;
  Dual(double value) : v(value) {}  // NOLINT(google-explicit-constructor)

  static Dual variable(double value, std::size_t direction, std::size_t directions) {
    if (directions > kMaxDualDirections || direction >= directions) {
      throw DomainError("Dual::variable: direction out of range");
    }
    Dual d(value);
    d.n = static_cast<std::uint8_t>(directions);
    d.g[direction] = 1.0;
    return d;
  }
};

namespace detail {

inline std::uint8_t dual_width(const Dual& a, const Dual& b) { return a.n > b.n ? a.n : b.n; }

inline Dual dual_unary(const Dual& a, double value, double slope) {
  Dual r(value);
  r.n = a.n;
  for (std::size_t i = 0; i < a.n; ++i) r.g[i] = slope * a.g[i];
  return r;
}

}  // namespace detail

inline Dual operator-(const Dual& a) {
  Dual r(-a.v);
  r.n = a.n;
  for (std::size_t i = 0; i < a.n; ++i) r.g[i] = -a.g[i];
  return r;
}

inline Dual operator+(const Dual& a, const Dual& b) {
  Dual r(a.v + b.v);
  r.n = detail::dual_width(a, b);
  for (std::size_t i = 0; i < r.n; ++i) r.g[i] = a.g[i] + b.g[i];
  return r;
}

inline Dual operator-(const Dual& a, const Dual& b) {
  Dual r(a.v - b.v);
  r.n = detail::dual_width(a, b);
  for (std::size_t i = 0; i < r.n; ++i) r.g[i] = a.g[i] - b.g[i];
  return r;
}

inline Dual operator*(const Dual& a, const Dual& b) {
  Dual r(a.v * b.v);
  r.n = detail::dual_width(a, b);
  for (std::size_t i = 0; i < r.n; ++i) r.g[i] = a.g[i] * b.v + a.v * b.g[i];
  return r;
}

inline Dual operator/(const Dual& a, const Dual& b) {
  const double q = a.v / b.v;
  Dual r(q);
  r.n = detail::dual_width(a, b);
  for (std::size_t i = 0; i < r.n; ++i) r.g[i] = (a.g[i] - q * b.g[i]) / b.v;
  return r;
}

inline Dual& operator+=(Dual& a, const Dual& b) { return a = a + b; }
inline Dual& operator-=(Dual& a, const Dual& b) { return a = a - b; }
inline Dual& operator*=(Dual& a, const Dual& b) { return a = a * b; }

inline Dual operator+(const Dual& a, double b) { return a + Dual(b); }
inline Dual operator+(double a, const Dual& b) { return Dual(a) + b; }
inline Dual operator-(const Dual& a, double b) { return a - Dual(b); }
inline Dual operator-(double a, const Dual& b) { return Dual(a) - b; }
inline Dual operator*(const Dual& a, double b) {
  Dual r(a.v * b);
  r.n = a.n;
  for (std::size_t i = 0; i < a.n; ++i) r.g[i] = a.g[i] * b;
  return r;
}
inline Dual operator*(double a, const Dual& b) { return b * a; }
inline Dual operator/(const Dual& a, double b) { return a * (1.0 / b); }
inline Dual operator/(double a, const Dual& b) { return Dual(a) / b; }

inline Dual tanh(const Dual& a) {
  const double t = std::tanh(a.v);
  return detail::dual_unary(a, t, 1.0 - t * t);
}
inline Dual sin(const Dual& a) { return detail::dual_unary(a, std::sin(a.v), std::cos(a.v)); }
inline Dual cos(const Dual& a) { return detail::dual_unary(a, std::cos(a.v), -std::sin(a.v)); }
inline Dual exp(const Dual& a) {
  const double e = std::exp(a.v);
  return detail::dual_unary(a, e, e);
}
inline Dual log(const Dual& a) { return detail::dual_unary(a, std::log(a.v), 1.0 / a.v); }
inline Dual pow(const Dual& a, double p) {
  return detail::dual_unary(a, std::pow(a.v, p), p * std::pow(a.v, p - 1.0));
}
inline Dual abs(const Dual& a) { return a.v < 0.0 ? -a : a; }

inline double value_of(const Dual& a) { return a.v; }

}  // namespace mfpinn::deriv
