#pragma once

#include <array>
#include <complex>
#include <string>
#include <vector>

#include "geoflow/field.hpp"
#include "geoflow/spin_flows.hpp"
#include "geoflow/stencil.hpp"

namespace geoflow {

using cplx = std::complex<double>;

/// 2x2 complex matrix, row-major.
struct Mat2c {
  std::array<cplx, 4> a{};

  cplx& operator()(int r, int c) { return a[2 * r + c]; }
  const cplx& operator()(int r, int c) const { return a[2 * r + c]; }

  static Mat2c identity() { return {{1.0, 0.0, 0.0, 1.0}}; }

  Mat2c& operator+=(const Mat2c& o) {
    for (int k = 0; k < 4; ++k) a[k] += o.a[k];
    return *this;
  }
  Mat2c& operator-=(const Mat2c& o) {
    for (int k = 0; k < 4; ++k) a[k] -= o.a[k];
    return *this;
  }
  friend Mat2c operator+(Mat2c x, const Mat2c& y) { return x += y; }
  friend Mat2c operator-(Mat2c x, const Mat2c& y) { return x -= y; }
  friend Mat2c operator*(cplx s, Mat2c x) {
    for (auto& v : x.a) v *= s;
    return x;
  }
  friend Mat2c operator*(Mat2c x, double s) { return cplx(s) * x; }
  friend Mat2c operator*(double s, Mat2c x) { return cplx(s) * x; }
  friend Mat2c operator*(const Mat2c& x, const Mat2c& y) {
    Mat2c out;
    for (int r = 0; r < 2; ++r)
      for (int c = 0; c < 2; ++c) out(r, c) = x(r, 0) * y(0, c) + x(r, 1) * y(1, c);
    return out;
  }
};

Mat2c commutator(const Mat2c& x, const Mat2c& y);
Mat2c adjoint(const Mat2c& x);
double frobenius(const Mat2c& x);

using MatrixFieldC2 = Field<Mat2c>;

/// Standard Pauli matrices; sigma(0..2).
const Mat2c& sigma(int a);
/// v . sigma.
Mat2c embed(const Vec3& v);
/// Largest deviation from sigma_a sigma_b = delta_ab I + i eps_abc sigma_c.
double pauli_algebra_defect();

/// Prefactor of U in the M-I pair: i lambda / 2 (Direct) or lambda / 2i (Chain,
/// the form used by the HF pair).
enum class LaxConvention { Direct, Chain };
LaxConvention lax_convention_from_string(const std::string& name);
const char* to_string(LaxConvention c);

struct LaxResidual {
  cplx lambda;
  LaxConvention convention = LaxConvention::Direct;
  double max_norm = 0.0;  ///< max Frobenius norm over nodes
  double l2_norm = 0.0;   ///< sqrt(sum |Z|_F^2 dA)
  MatrixFieldC2 Z;
};

struct LaxOptions {
  StencilOrder order = StencilOrder::Second;
  /// Constant gauge M: U, V are replaced by M U M^-1, M V M^-1.
  Mat2c gauge = Mat2c::identity();
};

/// Z = U_y - V_x + [U, V] with U = (lambda / 2i) S, V = (i lambda^2 / 2) S +
/// (lambda / 2) S_x S. levels are samples of the HF flow spaced by dy in the
/// evolution variable; Z is evaluated at levels[center] with central differences.
/// Throws InsufficientHistory when center has no neighbour on either side.
LaxResidual hf_zero_curvature_residual(const std::vector<VectorField3>& levels, double dy,
                                       std::size_t center, cplx lambda,
                                       const LaxOptions& opts = {});

/// Z = U_t - lambda U_y - V_x + [U, V] with U = c lambda S, c = i/2 (Direct) or
/// 1/2i (Chain), and V = (lambda / 4)([S, S_y] + 2 i u S).
LaxResidual mi_zero_curvature_residual(const std::vector<SpinState>& levels, double dt,
                                       std::size_t center, cplx lambda, LaxConvention convention,
                                       const LaxOptions& opts = {});

/// Evaluates the M-I residual under both conventions; `consistent` is the one
/// with the smaller max norm.
struct ConventionComparison {
  LaxConvention consistent = LaxConvention::Direct;
  double direct_max = 0.0;
  double chain_max = 0.0;
};
ConventionComparison compare_conventions(const std::vector<SpinState>& levels, double dt,
                                         std::size_t center, cplx lambda,
                                         const LaxOptions& opts = {});

/// Evaluates a polynomial through (lambda_k, Z_k), k = 0..n-1, at `at` node by node.
MatrixFieldC2 interpolate_in_lambda(const std::vector<cplx>& lambdas,
                                    const std::vector<MatrixFieldC2>& Z, cplx at);

double max_frobenius(const MatrixFieldC2& Z);
double max_frobenius_diff(const MatrixFieldC2& a, const MatrixFieldC2& b);

}  // namespace geoflow
