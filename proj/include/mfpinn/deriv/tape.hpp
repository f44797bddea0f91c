#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

namespace mfpinn::deriv {

class Var;

/// Reverse-mode recording of scalar operations. Each node stores up to two
/// parents with their local partial derivatives; `adjoints` sweeps the record
/// backwards from one output.
class Tape {
 public:
  Tape() = default;
  Tape(const Tape&) = delete;
  Tape& operator=(const Tape&) = delete;

  Var variable(double value);

  std::size_t size() const noexcept { return nodes_.size(); }
  void clear() noexcept { nodes_.clear(); }
  void reserve(std::size_t n) { nodes_.reserve(n); }

  /// Adjoint of every recorded node with respect to `output`.
  std::vector<double> adjoints(const Var& output) const;

 private:
  friend class Var;
  friend Var record(double value, const Var& a, double da);
  friend Var record(double value, const Var& a, double da, const Var& b, double db);

  struct Node {
    std::int64_t parent[2];
    double partial[2];
  };

  std::int64_t push(std::int64_t p0, double d0, std::int64_t p1, double d1);

  std::vector<Node> nodes_;
};

/// Scalar recorded on a Tape. A default-constructed or double-converted Var is
/// a constant (no tape node).
class Var {
 public:
  Var() = default;
  Var(double value) : value_(value) {}  // NOLINT(google-explicit-constructor)

  double value() const noexcept { return value_; }
  std::int64_t index() const noexcept { return index_; }
  Tape* tape() const noexcept { return tape_; }
  bool is_constant() const noexcept { return tape_ == nullptr; }

 private:
  friend class Tape;
  friend Var record(double value, const Var& a, double da);
  friend Var record(double value, const Var& a, double da, const Var& b, double db);

  Var(Tape* tape, std::int64_t index, double value) : tape_(tape), index_(index), value_(value) {}

  Tape* tape_ = nullptr;
  std::int64_t index_ = -1;
  double value_ = 0.0;
};

Var record(double value, const Var& a, double da);
Var record(double value, const Var& a, double da, const Var& b, double db);

Var operator-(const Var& a);
Var operator+(const Var& a, const Var& b);
Var operator-(const Var& a, const Var& b);
Var operator*(const Var& a, const Var& b);
Var operator/(const Var& a, const Var& b);
inline Var operator+(const Var& a, double b) { return a + Var(b); }
inline Var operator+(double a, const Var& b) { return Var(a) + b; }
inline Var operator-(const Var& a, double b) { return a - Var(b); }
inline Var operator-(double a, const Var& b) { return Var(a) - b; }
inline Var operator*(const Var& a, double b) { return a * Var(b); }
inline Var operator*(double a, const Var& b) { return Var(a) * b; }
inline Var operator/(const Var& a, double b) { return a / Var(b); }
inline Var operator/(double a, const Var& b) { return Var(a) / b; }
inline Var& operator+=(Var& a, const Var& b) { return a = a + b; }
inline Var& operator-=(Var& a, const Var& b) { return a = a - b; }
inline Var& operator*=(Var& a, const Var& b) { return a = a * b; }

Var tanh(const Var& a);
Var sin(const Var& a);
Var cos(const Var& a);
Var exp(const Var& a);
Var log(const Var& a);
Var pow(const Var& a, double p);
Var abs(const Var& a);

inline double value_of(const Var& a) { return a.value(); }

}  // namespace mfpinn::deriv
