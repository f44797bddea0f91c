#include "mfpinn/optim/line_search.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "mfpinn/errors.hpp"

namespace mfpinn::optim {

namespace {

struct Sample {
  double step;
  double value;
  double slope;
};

/// Minimizer of the cubic through (a, fa, da) and (b, fb, db), kept inside the
/// inner 80% of [a, b]; falls back to bisection.
double cubic_step(const Sample& a, const Sample& b) {
  const double lo = std::min(a.step, b.step);
  const double hi = std::max(a.step, b.step);
  const double margin = 0.1 * (hi - lo);
  const double d1 = a.slope + b.slope - 3.0 * (a.value - b.value) / (a.step - b.step);
  const double disc = d1 * d1 - a.slope * b.slope;
  double t = 0.5 * (lo + hi);
  if (disc >= 0.0) {
    const double d2 = std::copysign(std::sqrt(disc), b.step - a.step);
    const double denom = b.slope - a.slope + 2.0 * d2;
    if (denom != 0.0) {
      const double c = b.step - (b.step - a.step) * (b.slope + d2 - d1) / denom;
      if (std::isfinite(c)) t = c;
    }
  }
  return std::clamp(t, lo + margin, hi - margin);
}

}  // namespace

LineSearchResult wolfe_line_search(const VectorObjective& f, const Eigen::VectorXd& x, double f0,
                                   const Eigen::VectorXd& g0, const Eigen::VectorXd& direction, double initial_step,
                                   double c1, double c2, std::size_t max_steps) {
  if (!(0.0 < c1 && c1 < c2 && c2 < 1.0)) throw DomainError("wolfe_line_search: need 0 < c1 < c2 < 1");
  const double slope0 = g0.dot(direction);
  if (!(slope0 < 0.0)) throw DomainError("wolfe_line_search: direction is not a descent direction");
  if (!(initial_step > 0.0)) throw DomainError("wolfe_line_search: initial step must be positive");

  LineSearchResult best;
  best.step = 0.0;
  best.value = f0;
  best.grad = g0;

  Eigen::VectorXd trial_grad(x.size());
  auto evaluate = [&](double step) {
    const Eigen::VectorXd xt = x + step * direction;
    const double v = f(xt, trial_grad);
    ++best.evaluations;
    Sample s{step, v, std::isfinite(v) ? trial_grad.dot(direction) : std::numeric_limits<double>::quiet_NaN()};
    if (std::isfinite(v) && v <= f0 + c1 * step * slope0 && v < best.value) {
      best.step = step;
      best.value = v;
      best.grad = trial_grad;
    }
    return s;
  };
  auto accept = [&](const Sample& s) {
    best.step = s.step;
    best.value = s.value;
    best.grad = trial_grad;
    best.success = true;
    return best;
  };
  // Near a minimiser the Armijo decrease c1 * step * slope0 drops below the
  // rounding noise of f. Values within `noise` of each other are treated as
  // equal, so bracketing then follows the slope alone.
  const double noise = 1e-10 * std::abs(f0);
  auto sufficient = [&](const Sample& s) {
    return std::isfinite(s.value) && s.value <= f0 + c1 * s.step * slope0 + noise;
  };
  auto curvature = [&](const Sample& s) { return std::abs(s.slope) <= -c2 * slope0; };

  auto zoom = [&](Sample lo, Sample hi) -> LineSearchResult {
    while (best.evaluations < max_steps) {
      const Sample s = evaluate(cubic_step(lo, hi));
      if (!sufficient(s) || s.value > lo.value + noise) {
        hi = s;
      } else {
        if (curvature(s)) return accept(s);
        if (s.slope * (hi.step - lo.step) >= 0.0) hi = lo;
        lo = s;
      }
      if (std::abs(hi.step - lo.step) <= 1e-16 * std::max(1.0, std::abs(lo.step))) break;
    }
    return best;
  };

  Sample prev{0.0, f0, slope0};
  double step = initial_step;
  for (std::size_t i = 0; best.evaluations < max_steps; ++i) {
    Sample s = evaluate(step);
    if (!std::isfinite(s.value)) {
      // Overshot into a non-finite region: shrink toward the last good point.
      step = prev.step + 0.5 * (step - prev.step);
      continue;
    }
    if (!sufficient(s) || (i > 0 && s.value > prev.value + noise)) return zoom(prev, s);
    if (curvature(s)) return accept(s);
    if (s.slope >= 0.0) return zoom(s, prev);
    prev = s;
    step *= 2.0;
  }
  return best;
}

LineSearchResult wolfe_line_search(const VectorObjective& f, const Eigen::VectorXd& x,
                                   const Eigen::VectorXd& direction, double c1, double c2, std::size_t max_steps,
                                   double initial_step) {
  Eigen::VectorXd g0(x.size());
  const double f0 = f(x, g0);
  LineSearchResult r = wolfe_line_search(f, x, f0, g0, direction, initial_step, c1, c2, max_steps);
  ++r.evaluations;
  return r;
}

}  // namespace mfpinn::optim
