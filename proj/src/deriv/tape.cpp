#include "mfpinn/deriv/tape.hpp"

#include <cmath>

#include "mfpinn/errors.hpp"

namespace mfpinn::deriv {

std::int64_t Tape::push(std::int64_t p0, double d0, std::int64_t p1, double d1) {
  nodes_.push_back(Node{{p0, p1}, {d0, d1}});
  return static_cast<std::int64_t>(nodes_.size()) - 1;
}

Var Tape::variable(double value) { return Var(this, push(-1, 0.0, -1, 0.0), value); }

std::vector<double> Tape::adjoints(const Var& output) const {
  std::vector<double> adj(nodes_.size(), 0.0);
  if (output.is_constant()) return adj;
  if (output.tape() != this) throw DomainError("Tape::adjoints: output recorded on another tape");
  adj[static_cast<std::size_t>(output.index())] = 1.0;
  for (std::size_t i = static_cast<std::size_t>(output.index()) + 1; i-- > 0;) {
    const double a = adj[i];
    if (a == 0.0) continue;
    const Node& n = nodes_[i];
    for (int k = 0; k < 2; ++k) {
      if (n.parent[k] >= 0) adj[static_cast<std::size_t>(n.parent[k])] += a * n.partial[k];
    }
  }
  return adj;
}

Var record(double value, const Var& a, double da) {
  if (a.is_constant()) return Var(value);
  return Var(a.tape_, a.tape_->push(a.index_, da, -1, 0.0), value);
}

Var record(double value, const Var& a, double da, const Var& b, double db) {
  if (a.is_constant()) return record(value, b, db);
  if (b.is_constant()) return record(value, a, da);
  if (a.tape_ != b.tape_) throw DomainError("Var: operands recorded on different tapes");
  return Var(a.tape_, a.tape_->push(a.index_, da, b.index_, db), value);
}

Var operator-(const Var& a) { return record(-a.value(), a, -1.0); }
Var operator+(const Var& a, const Var& b) { return record(a.value() + b.value(), a, 1.0, b, 1.0); }
Var operator-(const Var& a, const Var& b) { return record(a.value() - b.value(), a, 1.0, b, -1.0); }
Var operator*(const Var& a, const Var& b) {
  return record(a.value() * b.value(), a, b.value(), b, a.value());
}
Var operator/(const Var& a, const Var& b) {
  const double q = a.value() / b.value();
  return record(q, a, 1.0 / b.value(), b, -q / b.value());
}

Var tanh(const Var& a) {
  const double t = std::tanh(a.value());
  return record(t, a, 1.0 - t * t);
}
Var sin(const Var& a) { return record(std::sin(a.value()), a, std::cos(a.value())); }
Var cos(const Var& a) { return record(std::cos(a.value()), a, -std::sin(a.value())); }
Var exp(const Var& a) {
  const double e = std::exp(a.value());
  return record(e, a, e);
}
Var log(const Var& a) { return record(std::log(a.value()), a, 1.0 / a.value()); }
Var pow(const Var& a, double p) {
  return record(std::pow(a.value(), p), a, p * std::pow(a.value(), p - 1.0));
}
Var abs(const Var& a) { return a.value() < 0.0 ? -a : a; }

}  // namespace mfpinn::deriv
