#include "geoflow/lax.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "geoflow/error.hpp"
#include "geoflow/vector_ops.hpp"

namespace geoflow {

namespace {

constexpr cplx I{0.0, 1.0};

Mat2c inverse(const Mat2c& m) {
  const cplx det = m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0);
  if (std::abs(det) == 0.0) throw ConfigInvalid("gauge matrix is singular");
  return (1.0 / det) * Mat2c{{m(1, 1), -m(0, 1), -m(1, 0), m(0, 0)}};
}

struct Gauge {
  explicit Gauge(const Mat2c& m) : M(m), Minv(inverse(m)) {}
  Mat2c operator()(const Mat2c& x) const { return M * x * Minv; }
  Mat2c M, Minv;
};

void check_pauli() {
  static const double defect = pauli_algebra_defect();
  if (defect > 1e-15) throw std::logic_error("Pauli algebra self-test failed");
}

void finish(LaxResidual& r) {
  const double area = r.Z.grid().cell_area();
  double s = 0.0;
  for (const Mat2c& z : r.Z.values()) {
    const double f = frobenius(z);
    r.max_norm = std::max(r.max_norm, f);
    s += f * f;
  }
  r.l2_norm = std::sqrt(s * area);
}

void require_neighbours(std::size_t size, std::size_t center) {
  if (size < 3) throw InsufficientHistory(size, 3);
  if (center == 0 || center + 1 >= size) throw InsufficientHistory(size, center + 2);
}

MatrixFieldC2 embed_field(const VectorField3& v, cplx scale, const Gauge& g) {
  return map(v, [&](const Vec3& a) { return g(scale * embed(a)); });
}

}  // namespace

Mat2c commutator(const Mat2c& x, const Mat2c& y) { return x * y - y * x; }

Mat2c adjoint(const Mat2c& x) {
  return {{std::conj(x(0, 0)), std::conj(x(1, 0)), std::conj(x(0, 1)), std::conj(x(1, 1))}};
}

double frobenius(const Mat2c& x) {
  double s = 0.0;
  for (const cplx& v : x.a) s += std::norm(v);
  return std::sqrt(s);
}

const Mat2c& sigma(int a) {
  static const Mat2c s[3] = {
      {{0.0, 1.0, 1.0, 0.0}},
      {{0.0, -I, I, 0.0}},
      {{1.0, 0.0, 0.0, -1.0}},
  };
  return s[a];
}

Mat2c embed(const Vec3& v) { return v.x * sigma(0) + v.y * sigma(1) + v.z * sigma(2); }

double pauli_algebra_defect() {
  auto eps = [](int a, int b, int c) { return (a - b) * (b - c) * (c - a) / 2.0; };
  double worst = 0.0;
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b) {
      Mat2c expect = (a == b ? 1.0 : 0.0) * Mat2c::identity();
      for (int c = 0; c < 3; ++c) expect += (I * eps(a, b, c)) * sigma(c);
      worst = std::max(worst, frobenius(sigma(a) * sigma(b) - expect));
    }
  return worst;
}

LaxConvention lax_convention_from_string(const std::string& name) {
  if (name == "direct") return LaxConvention::Direct;
  if (name == "chain") return LaxConvention::Chain;
  throw ConfigInvalid("unknown Lax convention '" + name + "' (expected direct or chain)");
}

const char* to_string(LaxConvention c) { return c == LaxConvention::Direct ? "direct" : "chain"; }

LaxResidual hf_zero_curvature_residual(const std::vector<VectorField3>& levels, double dy,
                                       std::size_t center, cplx lambda, const LaxOptions& opts) {
  check_pauli();
  require_neighbours(levels.size(), center);
  const Gauge gauge(opts.gauge);
  const VectorField3& S = levels[center];
  const VectorField3 Sx = dx(S, opts.order);
  const cplx cu = lambda / (2.0 * I);

  const MatrixFieldC2 U_y =
      embed_field((1.0 / (2.0 * dy)) * (levels[center + 1] - levels[center - 1]), cu, gauge);
  const MatrixFieldC2 U = embed_field(S, cu, gauge);
  MatrixFieldC2 V(S.grid());
  for (std::size_t k = 0; k < V.size(); ++k)
    V[k] = gauge((I * lambda * lambda / 2.0) * embed(S[k]) + (lambda / 2.0) * (embed(Sx[k]) * embed(S[k])));
  const MatrixFieldC2 V_x = dx(V, opts.order);

  LaxResidual r{lambda, LaxConvention::Chain, 0.0, 0.0, MatrixFieldC2(S.grid())};
  for (std::size_t k = 0; k < V.size(); ++k) r.Z[k] = U_y[k] - V_x[k] + commutator(U[k], V[k]);
  finish(r);
  return r;
}

LaxResidual mi_zero_curvature_residual(const std::vector<SpinState>& levels, double dt,
                                       std::size_t center, cplx lambda, LaxConvention convention,
                                       const LaxOptions& opts) {
  check_pauli();
  require_neighbours(levels.size(), center);
  const Gauge gauge(opts.gauge);
  const VectorField3& S = levels[center].S;
  const ScalarField& u = levels[center].u;
  const VectorField3 Sy = dy(S, opts.order);
  const cplx cu = (convention == LaxConvention::Direct ? I / 2.0 : 1.0 / (2.0 * I)) * lambda;

  const MatrixFieldC2 U_t =
      embed_field((1.0 / (2.0 * dt)) * (levels[center + 1].S - levels[center - 1].S), cu, gauge);
  const MatrixFieldC2 U = embed_field(S, cu, gauge);
  const MatrixFieldC2 U_y = dy(U, opts.order);
  MatrixFieldC2 V(S.grid());
  for (std::size_t k = 0; k < V.size(); ++k) {
    const Mat2c s = embed(S[k]);
    V[k] = gauge((lambda / 4.0) * (commutator(s, embed(Sy[k])) + (2.0 * I * u[k]) * s));
  }
  const MatrixFieldC2 V_x = dx(V, opts.order);

  LaxResidual r{lambda, convention, 0.0, 0.0, MatrixFieldC2(S.grid())};
  for (std::size_t k = 0; k < V.size(); ++k)
    r.Z[k] = U_t[k] - lambda * U_y[k] - V_x[k] + commutator(U[k], V[k]);
  finish(r);
  return r;
}

ConventionComparison compare_conventions(const std::vector<SpinState>& levels, double dt,
                                         std::size_t center, cplx lambda, const LaxOptions& opts) {
  ConventionComparison c;
  c.direct_max = mi_zero_curvature_residual(levels, dt, center, lambda, LaxConvention::Direct, opts).max_norm;
  c.chain_max = mi_zero_curvature_residual(levels, dt, center, lambda, LaxConvention::Chain, opts).max_norm;
  c.consistent = c.direct_max <= c.chain_max ? LaxConvention::Direct : LaxConvention::Chain;
  return c;
}

MatrixFieldC2 interpolate_in_lambda(const std::vector<cplx>& lambdas,
                                    const std::vector<MatrixFieldC2>& Z, cplx at) {
  if (lambdas.empty() || lambdas.size() != Z.size())
    throw ConfigInvalid("interpolation needs one residual per lambda");
  MatrixFieldC2 out(Z.front().grid());
  for (std::size_t a = 0; a < lambdas.size(); ++a) {
    cplx w = 1.0;
    for (std::size_t b = 0; b < lambdas.size(); ++b)
      if (b != a) w *= (at - lambdas[b]) / (lambdas[a] - lambdas[b]);
    for (std::size_t k = 0; k < out.size(); ++k) out[k] += w * Z[a][k];
  }
  return out;
}

double max_frobenius(const MatrixFieldC2& Z) {
  double m = 0.0;
  for (const Mat2c& z : Z.values()) m = std::max(m, frobenius(z));
  return m;
}

double max_frobenius_diff(const MatrixFieldC2& a, const MatrixFieldC2& b) {
  return max_frobenius(a - b);
}

}  // namespace geoflow
