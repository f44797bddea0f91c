#include "mfpinn/benchmarks/ode.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "mfpinn/errors.hpp"

namespace mfpinn::benchmarks {

Trajectory rk4_integrate(const OdeSystem& sys, double t0, double t1, double h, const std::vector<double>& record_times) {
  if (!(h > 0.0)) throw DomainError("rk4: step must be positive");
  if (!(t1 >= t0)) throw DomainError("rk4: need t1 >= t0");
  if (sys.initial.size() != sys.dimension || !sys.rhs) throw DomainError("rk4: malformed system");
  for (double r : record_times) {
    if (r < t0 || r > t1) throw DomainError("rk4: record time outside the integration span");
  }

  const std::size_t n = sys.dimension;
  std::vector<double> y = sys.initial, prev(n), k1(n), k2(n), k3(n), k4(n), tmp(n);
  std::vector<std::size_t> order(record_times.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return record_times[a] < record_times[b]; });

  Trajectory out;
  out.times = record_times;
  out.states.resize(static_cast<Eigen::Index>(record_times.size()), static_cast<Eigen::Index>(n));
  std::size_t next = 0;
  auto store = [&](std::size_t idx, double w, const std::vector<double>& a, const std::vector<double>& b) {
    for (std::size_t j = 0; j < n; ++j) {
      out.states(static_cast<Eigen::Index>(idx), static_cast<Eigen::Index>(j)) = (1.0 - w) * a[j] + w * b[j];
    }
  };
  while (next < order.size() && record_times[order[next]] <= t0) store(order[next++], 0.0, y, y);

  const auto steps = static_cast<std::size_t>(std::max(1.0, std::ceil((t1 - t0) / h - 1e-9)));
  double t = t0;
  for (std::size_t s = 0; s < steps && t < t1; ++s) {
    const double dt = (s + 1 == steps) ? t1 - t : std::min(h, t1 - t);
    prev = y;
    sys.rhs(t, y, k1);
    for (std::size_t j = 0; j < n; ++j) tmp[j] = y[j] + 0.5 * dt * k1[j];
    sys.rhs(t + 0.5 * dt, tmp, k2);
    for (std::size_t j = 0; j < n; ++j) tmp[j] = y[j] + 0.5 * dt * k2[j];
    sys.rhs(t + 0.5 * dt, tmp, k3);
    for (std::size_t j = 0; j < n; ++j) tmp[j] = y[j] + dt * k3[j];
    sys.rhs(t + dt, tmp, k4);
    for (std::size_t j = 0; j < n; ++j) {
      y[j] += dt / 6.0 * (k1[j] + 2.0 * k2[j] + 2.0 * k3[j] + k4[j]);
      if (!std::isfinite(y[j])) {
        throw NumericalError("rk4: non-finite state at t = " + std::to_string(t + dt), s);
      }
    }
    const double t_new = t + dt;
    while (next < order.size() && record_times[order[next]] <= t_new) {
      store(order[next], (record_times[order[next]] - t) / (t_new - t), prev, y);
      ++next;
    }
    t = t_new;
  }
  while (next < order.size()) store(order[next++], 1.0, y, y);
  return out;
}

}  // namespace mfpinn::benchmarks
