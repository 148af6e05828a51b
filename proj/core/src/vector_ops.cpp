#include "geoflow/vector_ops.hpp"

#include <algorithm>
#include <cmath>

#include "geoflow/error.hpp"

namespace geoflow {

VectorField3 cross(const VectorField3& a, const VectorField3& b) {
  return zip(a, b, [](const Vec3& p, const Vec3& q) { return cross(p, q); });
}

ScalarField dot(const VectorField3& a, const VectorField3& b) {
  return zip(a, b, [](const Vec3& p, const Vec3& q) { return dot(p, q); });
}

ScalarField triple(const VectorField3& a, const VectorField3& b, const VectorField3& c) {
  require_same_grid(a.grid(), c.grid());
  ScalarField out = dot(a, cross(b, c));
  return out;
}

ScalarField norms(const VectorField3& a) {
  return map(a, [](const Vec3& v) { return norm(v); });
}

VectorField3 normalize(const VectorField3& a) {
  VectorField3 out(a.grid());
  for (std::size_t k = 0; k < a.size(); ++k) {
    const double n = norm(a[k]);
    if (!(n >= 1e-13)) throw DegenerateVector(k);
    out[k] = a[k] / n;
  }
  return out;
}

double unit_defect(const VectorField3& a) {
  double m = 0.0;
  for (const Vec3& v : a.values()) m = std::max(m, std::abs(norm(v) - 1.0));
  return m;
}

VectorField3 tangent_part(const VectorField3& v, const VectorField3& s) {
  return zip(v, s, [](const Vec3& p, const Vec3& q) { return p - dot(p, q) * q; });
}

}  // namespace geoflow
