#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <type_traits>
#include <vector>

#include "mfpinn/deriv/dual.hpp"
#include "mfpinn/deriv/tape.hpp"
#include "mfpinn/errors.hpp"

namespace mfpinn::deriv {

inline double value_of(double a) { return a; }

inline constexpr std::size_t kMaxActiveCoords = 4;

/// Truncated second-order Taylor carrier. `d1[k]` is the first partial with
/// respect to active coordinate k; `d2[k]` the pure second partial, tracked
/// only for coordinates flagged second-order (others stay 0). Mixed partials
/// are not carried.
///
/// The scalar type T is double for plain evaluation, Dual to differentiate
/// through the channels in forward mode, or Var to record on a Tape.
template <class T>
class Jet2 {
 public:
  Jet2() = default;
  Jet2(const T& value) : value_(value) {}  // NOLINT(google-explicit-constructor)
  Jet2(double value)  // NOLINT(google-explicit-constructor)
    requires(!std::is_same_v<T, double>)
      : value_(value) {}
  Jet2(const T& value, std::size_t active, std::uint8_t second_mask = 0)
      : value_(value), n_(static_cast<std::uint8_t>(active)), second_(second_mask) {
    if (active > kMaxActiveCoords) throw DomainError("Jet2: too many active coordinates");
  }

  const T& value() const noexcept { return value_; }
  T& value() noexcept { return value_; }
  std::size_t active() const noexcept { return n_; }
  std::uint8_t second_mask() const noexcept { return second_; }
  bool tracks_second(std::size_t k) const noexcept { return (second_ >> k) & 1u; }

  const T& d1(std::size_t k) const noexcept { return d1_[k]; }
  T& d1(std::size_t k) noexcept { return d1_[k]; }
  const T& d2(std::size_t k) const noexcept { return d2_[k]; }
  T& d2(std::size_t k) noexcept { return d2_[k]; }

  /// Same active/second layout as `shape`, all channels zero except value.
  static Jet2 like(const Jet2& shape, const T& value) {
    Jet2 r(value);
    r.n_ = shape.n_;
    r.second_ = shape.second_;
    return r;
  }

 private:
  template <class U>
  friend class Jet2;

  T value_{};
  std::array<T, kMaxActiveCoords> d1_{};
  std::array<T, kMaxActiveCoords> d2_{};
  std::uint8_t n_ = 0;
  std::uint8_t second_ = 0;
};

namespace detail {

template <class T>
inline void check_finite(const Jet2<T>& j, const char* op) {
  bool ok = std::isfinite(value_of(j.value()));
  for (std::size_t k = 0; ok && k < j.active(); ++k) {
    ok = std::isfinite(value_of(j.d1(k))) && std::isfinite(value_of(j.d2(k)));
  }
  if (!ok) throw EvaluationError(op, "non-finite result");
}

template <class T>
inline Jet2<T> result_shape(const Jet2<T>& a, const Jet2<T>& b, const T& value) {
  if (a.active() != 0 && b.active() != 0 &&
      (a.active() != b.active() || a.second_mask() != b.second_mask())) {
    throw DomainError("Jet2: operands lifted with different coordinate layouts");
  }
  return Jet2<T>::like(a.active() >= b.active() ? a : b, value);
}

/// f(a) given f, f', f'' at a.value().
template <class T>
inline Jet2<T> chain(const Jet2<T>& a, const T& f, const T& df, const T& d2f, const char* op) {
  Jet2<T> r = Jet2<T>::like(a, f);
  for (std::size_t k = 0; k < a.active(); ++k) {
    r.d1(k) = df * a.d1(k);
    if (a.tracks_second(k)) r.d2(k) = df * a.d2(k) + d2f * a.d1(k) * a.d1(k);
  }
  check_finite(r, op);
  return r;
}

}  // namespace detail

/// Seeds one jet per input value. Coordinate k of `active_coords` refers to
/// `values[active_coords[k]]`; `second_order_coords` lists input indices that
/// must also appear in `active_coords`.
template <class T = double>
std::vector<Jet2<T>> lift(std::span<const T> values, std::span<const std::size_t> active_coords,
                          std::span<const std::size_t> second_order_coords) {
  if (active_coords.size() > kMaxActiveCoords) throw DomainError("lift: too many active coordinates");
  std::uint8_t mask = 0;
  for (std::size_t s : second_order_coords) {
    bool found = false;
    for (std::size_t k = 0; k < active_coords.size(); ++k) {
      if (active_coords[k] == s) {
        mask |= static_cast<std::uint8_t>(1u << k);
        found = true;
      }
    }
    if (!found) throw DomainError("lift: second-order coordinate is not active");
  }
  for (std::size_t c : active_coords) {
    if (c >= values.size()) throw DomainError("lift: coordinate index out of range");
  }
  std::vector<Jet2<T>> out;
  out.reserve(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) {
    Jet2<T> j(values[i], active_coords.size(), mask);
    for (std::size_t k = 0; k < active_coords.size(); ++k) {
      if (active_coords[k] == i) j.d1(k) = T(1.0);
    }
    out.push_back(j);
  }
  return out;
}

inline std::vector<Jet2<double>> lift(std::span<const double> values,
                                      std::span<const std::size_t> active_coords,
                                      std::span<const std::size_t> second_order_coords) {
  return lift<double>(values, active_coords, second_order_coords);
}

template <class T>
Jet2<T> operator-(const Jet2<T>& a) {
  Jet2<T> r = Jet2<T>::like(a, -a.value());
  for (std::size_t k = 0; k < a.active(); ++k) {
    r.d1(k) = -a.d1(k);
    r.d2(k) = -a.d2(k);
  }
  return r;
}

template <class T>
Jet2<T> operator+(const Jet2<T>& a, const Jet2<T>& b) {
  Jet2<T> r = detail::result_shape(a, b, a.value() + b.value());
  for (std::size_t k = 0; k < r.active(); ++k) {
    r.d1(k) = a.d1(k) + b.d1(k);
    r.d2(k) = a.d2(k) + b.d2(k);
  }
  detail::check_finite(r, "add");
  return r;
}

template <class T>
Jet2<T> operator-(const Jet2<T>& a, const Jet2<T>& b) {
  Jet2<T> r = detail::result_shape(a, b, a.value() - b.value());
  for (std::size_t k = 0; k < r.active(); ++k) {
    r.d1(k) = a.d1(k) - b.d1(k);
    r.d2(k) = a.d2(k) - b.d2(k);
  }
  detail::check_finite(r, "sub");
  return r;
}

template <class T>
Jet2<T> operator*(const Jet2<T>& a, const Jet2<T>& b) {
  Jet2<T> r = detail::result_shape(a, b, a.value() * b.value());
  for (std::size_t k = 0; k < r.active(); ++k) {
    r.d1(k) = a.d1(k) * b.value() + a.value() * b.d1(k);
    if (r.tracks_second(k)) {
      r.d2(k) = a.d2(k) * b.value() + T(2.0) * a.d1(k) * b.d1(k) + a.value() * b.d2(k);
    }
  }
  detail::check_finite(r, "mul");
  return r;
}

template <class T>
Jet2<T> operator/(const Jet2<T>& a, const Jet2<T>& b) {
  if (value_of(b.value()) == 0.0) throw EvaluationError("div", "division by zero");
  const T q = a.value() / b.value();
  Jet2<T> r = detail::result_shape(a, b, q);
  for (std::size_t k = 0; k < r.active(); ++k) {
    r.d1(k) = (a.d1(k) - q * b.d1(k)) / b.value();
    if (r.tracks_second(k)) {
      r.d2(k) = (a.d2(k) - T(2.0) * r.d1(k) * b.d1(k) - q * b.d2(k)) / b.value();
    }
  }
  detail::check_finite(r, "div");
  return r;
}

// Mixed jet/scalar arithmetic. The scalar is a constant with respect to the
// active coordinates.
template <class T>
Jet2<T> operator*(const Jet2<T>& a, const T& s) {
  Jet2<T> r = Jet2<T>::like(a, a.value() * s);
  for (std::size_t k = 0; k < a.active(); ++k) {
    r.d1(k) = a.d1(k) * s;
    r.d2(k) = a.d2(k) * s;
  }
  detail::check_finite(r, "mul");
  return r;
}
template <class T>
Jet2<T> operator*(const T& s, const Jet2<T>& a) {
  return a * s;
}
template <class T>
Jet2<T> operator+(const Jet2<T>& a, const T& s) {
  Jet2<T> r = a;
  r.value() = a.value() + s;
  detail::check_finite(r, "add");
  return r;
}
template <class T>
Jet2<T> operator+(const T& s, const Jet2<T>& a) {
  return a + s;
}
template <class T>
Jet2<T> operator-(const Jet2<T>& a, const T& s) {
  return a + (-s);
}
template <class T>
Jet2<T> operator-(const T& s, const Jet2<T>& a) {
  return (-a) + s;
}

// Non-double T also mixes with plain double constants.
template <class T>
  requires(!std::is_same_v<T, double>)
Jet2<T> operator*(const Jet2<T>& a, double s) {
  return a * T(s);
}
template <class T>
  requires(!std::is_same_v<T, double>)
Jet2<T> operator*(double s, const Jet2<T>& a) {
  return a * T(s);
}
template <class T>
  requires(!std::is_same_v<T, double>)
Jet2<T> operator+(const Jet2<T>& a, double s) {
  return a + T(s);
}
template <class T>
  requires(!std::is_same_v<T, double>)
Jet2<T> operator+(double s, const Jet2<T>& a) {
  return a + T(s);
}
template <class T>
  requires(!std::is_same_v<T, double>)
Jet2<T> operator-(const Jet2<T>& a, double s) {
  return a + T(-s);
}
template <class T>
  requires(!std::is_same_v<T, double>)
Jet2<T> operator-(double s, const Jet2<T>& a) {
  return (-a) + T(s);
}

template <class T>
Jet2<T> tanh(const Jet2<T>& a) {
  using std::tanh;
  const T f = tanh(a.value());
  const T df = T(1.0) - f * f;
  return detail::chain(a, f, df, T(-2.0) * f * df, "tanh");
}

template <class T>
Jet2<T> sin(const Jet2<T>& a) {
  using std::cos;
  using std::sin;
  const T s = sin(a.value());
  return detail::chain(a, s, cos(a.value()), -s, "sin");
}

template <class T>
Jet2<T> cos(const Jet2<T>& a) {
  using std::cos;
  using std::sin;
  const T c = cos(a.value());
  return detail::chain(a, c, -sin(a.value()), -c, "cos");
}

template <class T>
Jet2<T> exp(const Jet2<T>& a) {
  using std::exp;
  const T e = exp(a.value());
  return detail::chain(a, e, e, e, "exp");
}

template <class T>
Jet2<T> log(const Jet2<T>& a) {
  using std::log;
  if (!(value_of(a.value()) > 0.0)) throw EvaluationError("log", "argument must be positive");
  const T inv = T(1.0) / a.value();
  return detail::chain(a, log(a.value()), inv, -(inv * inv), "log");
}

/// a^p for a real exponent p. Non-integer p requires a > 0.
template <class T>
Jet2<T> pow(const Jet2<T>& a, double p) {
  using std::pow;
  const double av = value_of(a.value());
  const bool integral = std::floor(p) == p;
  if (!integral && !(av > 0.0)) throw EvaluationError("power", "non-integer power of non-positive base");
  if (p == 0.0) return Jet2<T>::like(a, T(1.0));
  if (p == 1.0) return a;
  const T f = pow(a.value(), p);
  const T df = T(p) * pow(a.value(), p - 1.0);
  const T d2f = (p == 2.0) ? T(2.0) : T(p * (p - 1.0)) * pow(a.value(), p - 2.0);
  return detail::chain(a, f, df, d2f, "power");
}

/// Uniform entry point mirroring the elementary-op table.
enum class JetOp { kAdd, kSub, kMul, kDiv, kNeg, kTanh, kSin, kCos, kExp, kLog, kPower };

template <class T>
Jet2<T> jet_elementary(JetOp op, const Jet2<T>& a, const Jet2<T>& b = Jet2<T>(), double exponent = 1.0) {
  switch (op) {
    case JetOp::kAdd: return a + b;
    case JetOp::kSub: return a - b;
    case JetOp::kMul: return a * b;
    case JetOp::kDiv: return a / b;
    case JetOp::kNeg: return -a;
    case JetOp::kTanh: return tanh(a);
    case JetOp::kSin: return sin(a);
    case JetOp::kCos: return cos(a);
    case JetOp::kExp: return exp(a);
    case JetOp::kLog: return log(a);
    case JetOp::kPower: return pow(a, exponent);
  }
  throw DomainError("jet_elementary: unknown op");
}

}  // namespace mfpinn::deriv
