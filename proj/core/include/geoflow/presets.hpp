#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "geoflow/field.hpp"

namespace geoflow {

/// Deterministic uniform draws in [0, 1) from mt19937_64 (53-bit mantissa),
/// independent of the standard library's distribution implementations.
class UniformSource {
 public:
  explicit UniformSource(std::uint64_t seed) : engine_(seed) {}
  double next() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  double symmetric() { return 2.0 * next() - 1.0; }

 private:
  std::mt19937_64 engine_;
};

VectorField3 constant_spin(const Grid2D& g, const Vec3& s);

/// S = (sin th cos kx, sin th sin kx, cos th) with k = 2 pi winding / Lx.
VectorField3 magnon(const Grid2D& g, double theta, int winding);
/// Wave number of a magnon with the given winding on this grid.
double magnon_wavenumber(const Grid2D& g, int winding);

/// Twisted travelling profile S(x, y) = R_z(kappa y) T(x + nu y) with
/// T = normalize(a cos s, 0.7 a sin s, 1 + 0.5 a cos 2s). The x-period must
/// be 2 pi and the y-period a multiple of 2 pi / kappa and 2 pi / nu.
VectorField3 twisted_profile(const Grid2D& g, double amplitude, double nu, double kappa);

/// Band-limited random scalar: sum over |m|, |n| <= bandwidth of random
/// cos/sin modes weighted by 1 / (1 + m^2 + n^2), zero mean, max abs scaled
/// to `amplitude`.
ScalarField random_smooth_scalar(const Grid2D& g, std::uint64_t seed, int bandwidth,
                                 double amplitude);

/// normalize(e3 + noise); with `odd_symmetric` the field is made invariant
/// under S(x, y) -> R S(-x, y), R = rotation by pi about e3, which forces the
/// row means of S . (S_x x S_y) to vanish.
VectorField3 random_smooth_spin(const Grid2D& g, std::uint64_t seed, int bandwidth,
                                double amplitude, bool odd_symmetric);

/// cos(2 pi kx x / Lx) cos(2 pi ky y / Ly) times amplitude.
ScalarField fourier_mode(const Grid2D& g, int kx, int ky, double amplitude = 1.0);

/// Upper hemisphere sqrt(rho^2 - r^2) centred in the chart, clamped to 0 outside.
ScalarField sphere_cap(const Grid2D& g, double rho);

}  // namespace geoflow
