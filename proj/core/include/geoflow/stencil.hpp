#pragma once

#include <vector>

#include "geoflow/field.hpp"

namespace geoflow {

/// Central periodic finite-difference stencils of second or fourth order.
enum class StencilOrder { Second = 2, Fourth = 4 };

enum class Deriv { X, Y, XX, YY, XY };

StencilOrder stencil_order_from_int(int order);

/// Imaginary part of the first-derivative symbol times h, at phase theta = k*h.
double first_derivative_symbol(double theta, StencilOrder order);
/// Second-derivative symbol times h^2 (non-positive), at phase theta = k*h.
double second_derivative_symbol(double theta, StencilOrder order);
/// Largest |second-derivative symbol| times h^2 over all phases.
double max_second_derivative_symbol(StencilOrder order);

namespace detail {

template <class T>
Field<T> first_along(const Field<T>& f, bool along_x, StencilOrder order) {
  const Grid2D& g = f.grid();
  Field<T> out(g);
  const int nx = g.nx(), ny = g.ny();
  const double h = along_x ? g.hx() : g.hy();
  auto at = [&](int i, int j, int s) -> const T& {
    return along_x ? f[g.wrap(i + s, j)] : f[g.wrap(i, j + s)];
  };
  if (order == StencilOrder::Second) {
    const double c = 1.0 / (2.0 * h);
    for (int j = 0; j < ny; ++j)
      for (int i = 0; i < nx; ++i) out(i, j) = (at(i, j, 1) - at(i, j, -1)) * c;
  } else {
    const double c = 1.0 / (12.0 * h);
    for (int j = 0; j < ny; ++j)
      for (int i = 0; i < nx; ++i)
        out(i, j) = ((at(i, j, 1) - at(i, j, -1)) * 8.0 - (at(i, j, 2) - at(i, j, -2))) * c;
  }
  return out;
}

template <class T>
Field<T> second_along(const Field<T>& f, bool along_x, StencilOrder order) {
  const Grid2D& g = f.grid();
  Field<T> out(g);
  const int nx = g.nx(), ny = g.ny();
  const double h = along_x ? g.hx() : g.hy();
  auto at = [&](int i, int j, int s) -> const T& {
    return along_x ? f[g.wrap(i + s, j)] : f[g.wrap(i, j + s)];
  };
  if (order == StencilOrder::Second) {
    const double c = 1.0 / (h * h);
    for (int j = 0; j < ny; ++j)
      for (int i = 0; i < nx; ++i)
        out(i, j) = (at(i, j, 1) + at(i, j, -1) - f(i, j) * 2.0) * c;
  } else {
    const double c = 1.0 / (12.0 * h * h);
    for (int j = 0; j < ny; ++j)
      for (int i = 0; i < nx; ++i)
        out(i, j) = ((at(i, j, 1) + at(i, j, -1)) * 16.0 - (at(i, j, 2) + at(i, j, -2)) -
                     f(i, j) * 30.0) *
                    c;
  }
  return out;
}

}  // namespace detail

/// Discrete partial derivative with periodic wrap. Exact on polynomials up to
/// the stencil order locally, O(h^order) truncation for smooth periodic data.
template <class T>
Field<T> derivative(const Field<T>& f, Deriv d, StencilOrder order) {
  switch (d) {
    case Deriv::X: return detail::first_along(f, true, order);
    case Deriv::Y: return detail::first_along(f, false, order);
    case Deriv::XX: return detail::second_along(f, true, order);
    case Deriv::YY: return detail::second_along(f, false, order);
    case Deriv::XY: return detail::first_along(detail::first_along(f, true, order), false, order);
  }
  return f;
}

template <class T>
Field<T> dx(const Field<T>& f, StencilOrder o) {
  return derivative(f, Deriv::X, o);
}
template <class T>
Field<T> dy(const Field<T>& f, StencilOrder o) {
  return derivative(f, Deriv::Y, o);
}

/// Flat Laplacian f_xx + f_yy.
ScalarField laplacian(const ScalarField& f, StencilOrder order);

}  // namespace geoflow
