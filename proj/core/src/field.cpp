#include "geoflow/field.hpp"

#include <algorithm>
#include <cmath>

#include "geoflow/error.hpp"

namespace geoflow {

Grid2D::Grid2D(int nx, int ny, double Lx, double Ly) : nx_(nx), ny_(ny), Lx_(Lx), Ly_(Ly) {
  if (nx < 8) throw GridTooSmall(nx, 8);
  if (ny < 8) throw GridTooSmall(ny, 8);
  if (nx % 2 != 0 || ny % 2 != 0)
    throw Error(ErrorCode::InvalidGrid, "node counts must be even");
  if (!(Lx > 0.0) || !(Ly > 0.0) || !std::isfinite(Lx) || !std::isfinite(Ly))
    throw Error(ErrorCode::InvalidGrid, "periods must be positive and finite");
}

void require_same_grid(const Grid2D& a, const Grid2D& b) {
  if (!(a == b)) throw Error(ErrorCode::GridMismatch, "fields live on different grids");
}

ScalarField component(const VectorField3& v, int c) {
  return map(v, [c](const Vec3& a) { return a[c]; });
}

VectorField3 from_components(const ScalarField& x, const ScalarField& y, const ScalarField& z) {
  require_same_grid(x.grid(), y.grid());
  require_same_grid(x.grid(), z.grid());
  VectorField3 out(x.grid());
  for (std::size_t k = 0; k < out.size(); ++k) out[k] = {x[k], y[k], z[k]};
  return out;
}

ScalarField operator*(const ScalarField& a, const ScalarField& b) {
  return zip(a, b, [](double p, double q) { return p * q; });
}

VectorField3 operator*(const ScalarField& s, const VectorField3& v) {
  return zip(s, v, [](double p, const Vec3& q) { return p * q; });
}

double max_abs(const ScalarField& f) {
  double m = 0.0;
  for (double v : f.values()) m = std::max(m, std::abs(v));
  return m;
}

double max_norm(const VectorField3& f) {
  double m = 0.0;
  for (const Vec3& v : f.values()) m = std::max(m, norm(v));
  return m;
}

double rms(const ScalarField& f) {
  double s = 0.0;
  for (double v : f.values()) s += v * v;
  return std::sqrt(s / static_cast<double>(f.size()));
}

double rms(const VectorField3& f) {
  double s = 0.0;
  for (const Vec3& v : f.values()) s += dot(v, v);
  return std::sqrt(s / static_cast<double>(f.size()));
}

double mean(const ScalarField& f) {
  double s = 0.0;
  for (double v : f.values()) s += v;
  return s / static_cast<double>(f.size());
}

double integrate(const ScalarField& f) {
  double s = 0.0;
  for (double v : f.values()) s += v;
  return s * f.grid().cell_area();
}

bool all_finite(const ScalarField& f) {
  return std::all_of(f.values().begin(), f.values().end(),
                     [](double v) { return std::isfinite(v); });
}

bool all_finite(const VectorField3& f) {
  return std::all_of(f.values().begin(), f.values().end(), [](const Vec3& v) {
    return std::isfinite(v.x) && std::isfinite(v.y) && std::isfinite(v.z);
  });
}

std::vector<double> row_means(const ScalarField& f) {
  const Grid2D& g = f.grid();
  std::vector<double> out(g.ny(), 0.0);
  for (int j = 0; j < g.ny(); ++j) {
    double s = 0.0;
    for (int i = 0; i < g.nx(); ++i) s += f(i, j);
    out[j] = s / g.nx();
  }
  return out;
}

Vec3 LinearPlusPeriodic::position(int i, int j) const {
  const Grid2D& g = grid();
  return g.x(i) * slope[j] + g.y(j) * slope_y + periodic(i, j);
}

VectorField3 LinearPlusPeriodic::positions() const {
  VectorField3 out(grid());
  for (int j = 0; j < grid().ny(); ++j)
    for (int i = 0; i < grid().nx(); ++i) out(i, j) = position(i, j);
  return out;
}

bool LinearPlusPeriodic::uniform_slope(double tol) const {
  for (const Vec3& s : slope)
    if (norm(s - slope.front()) > tol) return false;
  return true;
}

}  // namespace geoflow
