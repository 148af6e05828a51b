#include "geoflow/presets.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "geoflow/vector_ops.hpp"

namespace geoflow {

using std::numbers::pi;

VectorField3 constant_spin(const Grid2D& g, const Vec3& s) { return VectorField3(g, s); }

double magnon_wavenumber(const Grid2D& g, int winding) { return 2.0 * pi * winding / g.Lx(); }

VectorField3 magnon(const Grid2D& g, double theta, int winding) {
  const double k = magnon_wavenumber(g, winding);
  return VectorField3::sample(g, [&](double x, double) {
    return Vec3{std::sin(theta) * std::cos(k * x), std::sin(theta) * std::sin(k * x),
                std::cos(theta)};
  });
}

VectorField3 twisted_profile(const Grid2D& g, double a, double nu, double kappa) {
  return VectorField3::sample(g, [&](double x, double y) {
    const double s = x + nu * y;
    Vec3 t{a * std::cos(s), 0.7 * a * std::sin(s), 1.0 + 0.5 * a * std::cos(2.0 * s)};
    t = t / norm(t);
    const double c = std::cos(kappa * y), sn = std::sin(kappa * y);
    return Vec3{c * t.x - sn * t.y, sn * t.x + c * t.y, t.z};
  });
}

ScalarField random_smooth_scalar(const Grid2D& g, std::uint64_t seed, int bw, double amplitude) {
  UniformSource rng(seed);
  ScalarField f(g);
  for (int m = 0; m <= bw; ++m)
    for (int n = -bw; n <= bw; ++n) {
      if (m == 0 && n <= 0) continue;
      const double w = 1.0 / (1.0 + m * m + n * n);
      const double a = w * rng.symmetric(), b = w * rng.symmetric();
      const double kx = 2.0 * pi * m / g.Lx(), ky = 2.0 * pi * n / g.Ly();
      for (int j = 0; j < g.ny(); ++j)
        for (int i = 0; i < g.nx(); ++i) {
          const double ph = kx * g.x(i) + ky * g.y(j);
          f(i, j) += a * std::cos(ph) + b * std::sin(ph);
        }
    }
  const double m = max_abs(f);
  if (m > 0.0) f *= amplitude / m;
  return f;
}

VectorField3 random_smooth_spin(const Grid2D& g, std::uint64_t seed, int bw, double amplitude,
                                bool odd_symmetric) {
  VectorField3 v = from_components(random_smooth_scalar(g, seed, bw, amplitude),
                                   random_smooth_scalar(g, seed + 1, bw, amplitude),
                                   random_smooth_scalar(g, seed + 2, bw, amplitude));
  for (auto& e : v.values()) e.z += 1.0;
  if (odd_symmetric) {
    VectorField3 w(g);
    for (int j = 0; j < g.ny(); ++j)
      for (int i = 0; i < g.nx(); ++i) {
        const Vec3 m = v[g.wrap(-i, j)];
        w(i, j) = v(i, j) + Vec3{-m.x, -m.y, m.z};
      }
    v = std::move(w);
  }
  return normalize(v);
}

ScalarField fourier_mode(const Grid2D& g, int kx, int ky, double amplitude) {
  return ScalarField::sample(g, [&](double x, double y) {
    return amplitude * std::cos(2.0 * pi * kx * x / g.Lx()) * std::cos(2.0 * pi * ky * y / g.Ly());
  });
}

ScalarField sphere_cap(const Grid2D& g, double rho) {
  const double cx = 0.5 * g.Lx(), cy = 0.5 * g.Ly();
  return ScalarField::sample(g, [&](double x, double y) {
    const double r2 = (x - cx) * (x - cx) + (y - cy) * (y - cy);
    return std::sqrt(std::max(rho * rho - r2, 0.0));
  });
}

}  // namespace geoflow
