#pragma once

#include <cmath>
#include <string>

#include "gcyl/common.hpp"

namespace gcyl {

struct OdeOptions {
  double h = 1e-3;
  bool halving_check = true;
  double tol = 1e-9;  // allowed difference between the h and h/2 solutions, relative to max(1,|y|)
};

// Classical fixed-step RK4 on [t0,t1] with `steps` equal steps (t1 < t0 allowed).
template <class State, class F>
State rk4(const F& f, double t0, double t1, State y, int steps) {
  const double h = (t1 - t0) / steps;
  for (int k = 0; k < steps; ++k) {
    const double t = t0 + k * h;
    State k1 = f(t, y);
    State k2 = f(t + 0.5 * h, State(y + (0.5 * h) * k1));
    State k3 = f(t + 0.5 * h, State(y + (0.5 * h) * k2));
    State k4 = f(t + h, State(y + h * k3));
    y = State(y + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4));
  }
  return y;
}

template <class State, class F>
State integrate(const F& f, double t0, double t1, const State& y0, const OdeOptions& o = {}) {
  if (t0 == t1) return y0;
  const int steps = std::max(1, static_cast<int>(std::ceil(std::abs(t1 - t0) / o.h - 1e-9)));
  State coarse = rk4(f, t0, t1, y0, steps);
  if (!o.halving_check) return coarse;
  State fine = rk4(f, t0, t1, y0, 2 * steps);
  const double scale = std::max(1.0, static_cast<double>(fine.norm()));
  if (!std::isfinite(static_cast<double>(fine.norm())) || (fine - coarse).norm() > o.tol * scale)
    throw ConditioningError("ODE step-halving check failed: difference " + std::to_string((fine - coarse).norm()));
  return fine;
}

}  // namespace gcyl
