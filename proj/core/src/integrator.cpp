#include "geoflow/integrator.hpp"

#include <algorithm>

#include "geoflow/error.hpp"

namespace geoflow {

Integrator integrator_from_string(const std::string& name) {
  if (name == "rk4" || name == "RK4") return Integrator::RK4;
  if (name == "heun" || name == "Heun") return Integrator::Heun;
  throw ConfigInvalid("unknown integrator '" + name + "'");
}

int integrator_order(Integrator kind) { return kind == Integrator::RK4 ? 4 : 2; }

double stability_limit(Integrator kind, double spectral_radius, double min_h) {
  // 2.785 is the smaller of the real and imaginary extents of the RK4 region.
  if (kind == Integrator::RK4) return 2.785 / spectral_radius;
  return std::min(0.25 * min_h * min_h, 2.0 / spectral_radius);
}

}  // namespace geoflow
