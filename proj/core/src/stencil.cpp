#include "geoflow/stencil.hpp"

#include <cmath>
#include <numbers>

#include "geoflow/error.hpp"

namespace geoflow {

StencilOrder stencil_order_from_int(int order) {
  if (order == 2) return StencilOrder::Second;
  if (order == 4) return StencilOrder::Fourth;
  throw ConfigInvalid("stencil order must be 2 or 4, got " + std::to_string(order));
}

double first_derivative_symbol(double theta, StencilOrder order) {
  if (order == StencilOrder::Second) return std::sin(theta);
  return (8.0 * std::sin(theta) - std::sin(2.0 * theta)) / 6.0;
}

double second_derivative_symbol(double theta, StencilOrder order) {
  if (order == StencilOrder::Second) return 2.0 * std::cos(theta) - 2.0;
  return (32.0 * std::cos(theta) - 2.0 * std::cos(2.0 * theta) - 30.0) / 12.0;
}

double max_second_derivative_symbol(StencilOrder order) {
  return std::abs(second_derivative_symbol(std::numbers::pi, order));
}

ScalarField laplacian(const ScalarField& f, StencilOrder order) {
  return derivative(f, Deriv::XX, order) + derivative(f, Deriv::YY, order);
}

}  // namespace geoflow
