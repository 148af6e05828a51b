#pragma once

#include <string>

namespace geoflow {

enum class Integrator { RK4, Heun };

Integrator integrator_from_string(const std::string& name);
int integrator_order(Integrator kind);

/// Largest admissible explicit step for a right-hand side whose linearization
/// has spectral radius at most `spectral_radius`. Heun is additionally capped
/// at 0.25 min_h^2.
double stability_limit(Integrator kind, double spectral_radius, double min_h);

struct NoStageHook {
  template <class State>
  void operator()(double, State&) const {}
};

/// One explicit step y(t) -> y(t + dt) of y' = rhs(t, y).
/// State needs copy, +, and scaling by double. hook(t, state) runs on every
/// stage input and on the result (used for pinned boundary values).
template <class State, class Rhs, class Hook = NoStageHook>
State integrate_step(const State& y, double t, double dt, Integrator kind, Rhs&& rhs,
                     Hook&& hook = {}) {
  if (kind == Integrator::Heun) {
    const State k1 = rhs(t, y);
    State y1 = y + dt * k1;
    hook(t + dt, y1);
    const State k2 = rhs(t + dt, y1);
    State out = y + (0.5 * dt) * (k1 + k2);
    hook(t + dt, out);
    return out;
  }
  const State k1 = rhs(t, y);
  State y2 = y + (0.5 * dt) * k1;
  hook(t + 0.5 * dt, y2);
  const State k2 = rhs(t + 0.5 * dt, y2);
  State y3 = y + (0.5 * dt) * k2;
  hook(t + 0.5 * dt, y3);
  const State k3 = rhs(t + 0.5 * dt, y3);
  State y4 = y + dt * k3;
  hook(t + dt, y4);
  const State k4 = rhs(t + dt, y4);
  State out = y + (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
  hook(t + dt, out);
  return out;
}

}  // namespace geoflow
