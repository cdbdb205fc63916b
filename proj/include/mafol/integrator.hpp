#pragma once

#include <cmath>
#include <functional>

#include "mafol/types.hpp"

namespace mafol {

/// Fixed-step classical Runge-Kutta settings. `box_radius` bounds |z|; a
/// trajectory leaving the box is truncated by the caller.
struct IntegratorConfig {
  double step = 1e-3;
  double box_radius = 1e6;
};

using VelocityField = std::function<CVector(const CPoint&)>;

inline CPoint rk4_step(const VelocityField& f, const CPoint& z, double h) {
  const CVector k1 = f(z);
  const CVector k2 = f(z + (0.5 * h) * k1);
  const CVector k3 = f(z + (0.5 * h) * k2);
  const CVector k4 = f(z + h * k3);
  return z + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
}

/// Number of equal steps used to cover `duration` with steps no longer than h.
inline long step_count(double duration, double h) {
  if (!(h > 0.0)) throw IntegrationError("integrator step must be positive");
  return static_cast<long>(std::ceil(std::abs(duration) / h - 1e-9));
}

/// Integrates dz/dt = f(z) for signed time `duration`. `observe(z)` runs
/// after every step and may return false to abort; integrate then returns
/// false and `z` holds the last accepted state.
template <class Observer>
bool integrate(const VelocityField& f, CPoint& z, double duration, double h, Observer&& observe) {
  const long steps = step_count(duration, h);
  if (steps == 0) return true;
  const double dt = duration / static_cast<double>(steps);
  for (long k = 0; k < steps; ++k) {
    CPoint next = rk4_step(f, z, dt);
    if (!next.allFinite()) throw IntegrationError("non-finite state in RK4 step");
    if (!observe(next)) return false;
    z = std::move(next);
  }
  return true;
}

inline CPoint integrate(const VelocityField& f, CPoint z, double duration, double h) {
  integrate(f, z, duration, h, [](const CPoint&) { return true; });
  return z;
}

}  // namespace mafol
