#pragma once

#include <cmath>
#include <cstddef>
#include <span>
#include <utility>
#include <vector>

#include "geoflow/grid.hpp"
#include "geoflow/vec3.hpp"

namespace geoflow {

/// Value per grid node. T is double (scalar fields), Vec3 (vector fields) or
/// a small matrix type; T must support +, - and scaling by double.
template <class T>
class Field {
 public:
  using value_type = T;

  explicit Field(const Grid2D& grid, T fill = T{}) : grid_(grid), values_(grid.size(), fill) {}
  Field(const Grid2D& grid, std::vector<T> values) : grid_(grid), values_(std::move(values)) {
    if (values_.size() != grid_.size()) values_.resize(grid_.size());
  }

  /// Samples f(x, y) at every node.
  template <class F>
  static Field sample(const Grid2D& grid, F&& f) {
    Field out(grid);
    for (int j = 0; j < grid.ny(); ++j)
      for (int i = 0; i < grid.nx(); ++i) out(i, j) = f(grid.x(i), grid.y(j));
    return out;
  }

  const Grid2D& grid() const noexcept { return grid_; }
  std::size_t size() const noexcept { return values_.size(); }

  T& operator()(int i, int j) noexcept { return values_[grid_.index(i, j)]; }
  const T& operator()(int i, int j) const noexcept { return values_[grid_.index(i, j)]; }
  T& operator[](std::size_t k) noexcept { return values_[k]; }
  const T& operator[](std::size_t k) const noexcept { return values_[k]; }

  std::span<T> values() noexcept { return values_; }
  std::span<const T> values() const noexcept { return values_; }

  Field& operator+=(const Field& o) {
    require_same_grid(grid_, o.grid_);
    for (std::size_t k = 0; k < values_.size(); ++k) values_[k] += o.values_[k];
    return *this;
  }
  Field& operator-=(const Field& o) {
    require_same_grid(grid_, o.grid_);
    for (std::size_t k = 0; k < values_.size(); ++k) values_[k] -= o.values_[k];
    return *this;
  }
  Field& operator*=(double s) {
    for (auto& v : values_) v = v * s;
    return *this;
  }

  friend Field operator+(Field a, const Field& b) { return a += b; }
  friend Field operator-(Field a, const Field& b) { return a -= b; }
  friend Field operator*(double s, Field a) { return a *= s; }
  friend Field operator*(Field a, double s) { return a *= s; }

 private:
  Grid2D grid_;
  std::vector<T> values_;
};

using ScalarField = Field<double>;
using VectorField3 = Field<Vec3>;

/// Applies f node by node: out[k] = f(in[k]).
template <class T, class F>
auto map(const Field<T>& in, F&& f) {
  using R = decltype(f(in[0]));
  Field<R> out(in.grid());
  for (std::size_t k = 0; k < in.size(); ++k) out[k] = f(in[k]);
  return out;
}

template <class A, class B, class F>
auto zip(const Field<A>& a, const Field<B>& b, F&& f) {
  require_same_grid(a.grid(), b.grid());
  using R = decltype(f(a[0], b[0]));
  Field<R> out(a.grid());
  for (std::size_t k = 0; k < a.size(); ++k) out[k] = f(a[k], b[k]);
  return out;
}

ScalarField component(const VectorField3& v, int c);
VectorField3 from_components(const ScalarField& x, const ScalarField& y, const ScalarField& z);

ScalarField operator*(const ScalarField& a, const ScalarField& b);
/// Pointwise scalar times vector.
VectorField3 operator*(const ScalarField& s, const VectorField3& v);

double max_abs(const ScalarField& f);
double max_norm(const VectorField3& f);
/// Root mean square over nodes.
double rms(const ScalarField& f);
double rms(const VectorField3& f);
double mean(const ScalarField& f);
/// Sum of values times cell area (rectangle rule, spectrally accurate for periodic data).
double integrate(const ScalarField& f);

bool all_finite(const ScalarField& f);
bool all_finite(const VectorField3& f);

/// Per-row x-mean (one value per y row).
std::vector<double> row_means(const ScalarField& f);

/// Surface position split as r(x, y) = x * slope(y) + y * slope_y + periodic(x, y).
/// For r_x = S the slope is the x-mean of S on each row and the periodic part
/// has zero x-mean per row.
struct LinearPlusPeriodic {
  std::vector<Vec3> slope;  ///< one entry per y row
  Vec3 slope_y{};           ///< constant y-drift (zero for surfaces built from S)
  VectorField3 periodic;

  const Grid2D& grid() const noexcept { return periodic.grid(); }
  Vec3 position(int i, int j) const;
  VectorField3 positions() const;
  /// True when slope is the same on every row within tol, so that r_y is periodic.
  bool uniform_slope(double tol = 1e-10) const;
};

}  // namespace geoflow
