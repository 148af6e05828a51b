#include "geoflow/surface.hpp"

#include <algorithm>
#include <array>
#include <cmath>

#include "geoflow/error.hpp"
#include "geoflow/vector_ops.hpp"

namespace geoflow {

namespace {

// Adds x * s[j] (or s[j] alone when times_x is false) to every node of row j.
void add_row_term(VectorField3& f, const std::vector<Vec3>& s, bool times_x) {
  const Grid2D& g = f.grid();
  for (int j = 0; j < g.ny(); ++j)
    for (int i = 0; i < g.nx(); ++i) f(i, j) += (times_x ? g.x(i) : 1.0) * s[j];
}

VectorField3 rows_as_field(const Grid2D& g, const std::vector<Vec3>& s) {
  VectorField3 f(g);
  add_row_term(f, s, false);
  return f;
}

std::vector<Vec3> row_values(const VectorField3& f) {
  std::vector<Vec3> out(f.grid().ny());
  for (int j = 0; j < f.grid().ny(); ++j) out[j] = f(0, j);
  return out;
}

// Central weights for first and second derivatives across levels.
struct LevelWeights {
  int half;
  std::array<double, 5> d1, d2;
};

LevelWeights level_weights(StencilOrder order) {
  if (order == StencilOrder::Second) return {1, {0, -0.5, 0, 0.5, 0}, {0, 1, -2, 1, 0}};
  return {2,
          {1.0 / 12, -8.0 / 12, 0, 8.0 / 12, -1.0 / 12},
          {-1.0 / 12, 16.0 / 12, -30.0 / 12, 16.0 / 12, -1.0 / 12}};
}

double det3(const std::array<std::array<double, 3>, 3>& a) {
  return a[0][0] * (a[1][1] * a[2][2] - a[1][2] * a[2][1]) -
         a[0][1] * (a[1][0] * a[2][2] - a[1][2] * a[2][0]) +
         a[0][2] * (a[1][0] * a[2][1] - a[1][1] * a[2][0]);
}

}  // namespace

LinearPlusPeriodic reconstruct_position(const VectorField3& S, AntiderivativeMode mode) {
  const Grid2D& g = S.grid();
  LinearPlusPeriodic r{std::vector<Vec3>(g.ny()), Vec3{}, VectorField3(g)};
  VectorField3 fluct = S;
  for (int j = 0; j < g.ny(); ++j) {
    Vec3 m{};
    for (int i = 0; i < g.nx(); ++i) m += S(i, j);
    m = m / g.nx();
    r.slope[j] = m;
    for (int i = 0; i < g.nx(); ++i) fluct(i, j) -= m;
  }
  r.periodic = antiderivative_x(fluct, 1e-9, mode);
  return r;
}

SurfaceJet surface_jet(const LinearPlusPeriodic& r, StencilOrder order) {
  const Grid2D& g = r.grid();
  const VectorField3& P = r.periodic;
  const VectorField3 slope = rows_as_field(g, r.slope);
  const std::vector<Vec3> ds = row_values(dy(slope, order));
  const std::vector<Vec3> dds = row_values(derivative(slope, Deriv::YY, order));

  SurfaceJet jet{dx(P, order) + slope, dy(P, order), derivative(P, Deriv::XX, order),
                 derivative(P, Deriv::XY, order), derivative(P, Deriv::YY, order), order};
  add_row_term(jet.r_y, ds, true);
  for (auto& v : jet.r_y.values()) v += r.slope_y;
  add_row_term(jet.r_xy, ds, false);
  add_row_term(jet.r_yy, dds, true);
  return jet;
}

SurfaceJet sheet_jet(const std::vector<LinearPlusPeriodic>& levels, double dy_level,
                     std::size_t center, StencilOrder order,
                     const std::vector<std::vector<Vec3>>& drift) {
  const LevelWeights w = level_weights(order);
  if (center < static_cast<std::size_t>(w.half) || center + w.half >= levels.size())
    throw InsufficientHistory(levels.size(), center + w.half + 1);
  const LinearPlusPeriodic& mid = levels[center];
  const Grid2D& g = mid.grid();

  VectorField3 p_y(g), p_yy(g);
  std::vector<Vec3> s_y(g.ny()), s_yy(g.ny()), drift_y(g.ny());
  for (int s = -w.half; s <= w.half; ++s) {
    const LinearPlusPeriodic& lv = levels[center + s];
    require_same_grid(g, lv.grid());
    const double a = w.d1[2 + s] / dy_level, b = w.d2[2 + s] / (dy_level * dy_level);
    if (a != 0.0) p_y += a * lv.periodic;
    if (b != 0.0) p_yy += b * lv.periodic;
    for (int j = 0; j < g.ny(); ++j) {
      s_y[j] += a * lv.slope[j];
      s_yy[j] += b * lv.slope[j];
      if (!drift.empty()) drift_y[j] += a * drift.at(center + s)[j];
    }
  }

  SurfaceJet jet{dx(mid.periodic, order), p_y, derivative(mid.periodic, Deriv::XX, order),
                 dx(p_y, order), p_yy, order};
  add_row_term(jet.r_x, mid.slope, false);
  add_row_term(jet.r_y, s_y, true);
  add_row_term(jet.r_xy, s_y, false);
  add_row_term(jet.r_yy, s_yy, true);
  if (!drift.empty()) {
    add_row_term(jet.r_y, drift.at(center), false);
    add_row_term(jet.r_yy, drift_y, false);
  }
  return jet;
}

std::vector<Vec3> hf_sheet_drift(const VectorField3& S, StencilOrder order) {
  const VectorField3 w = cross(S, dx(S, order));
  const Grid2D& g = S.grid();
  std::vector<Vec3> out(g.ny());
  for (int j = 0; j < g.ny(); ++j) {
    for (int i = 0; i < g.nx(); ++i) out[j] += w(i, j);
    out[j] = out[j] / g.nx();
  }
  return out;
}

FundamentalForms fundamental_forms(const SurfaceJet& jet, double g_floor) {
  FundamentalForms f{dot(jet.r_x, jet.r_x), dot(jet.r_x, jet.r_y), dot(jet.r_y, jet.r_y),
                     ScalarField(jet.r_x.grid()), ScalarField(jet.r_x.grid()),
                     ScalarField(jet.r_x.grid()), ScalarField(jet.r_x.grid()),
                     VectorField3(jet.r_x.grid())};
  for (std::size_t k = 0; k < f.E.size(); ++k) {
    const double g = f.E[k] * f.G[k] - f.F[k] * f.F[k];
    if (!(g > g_floor)) throw DegenerateMetric(k, g);
    f.g[k] = g;
    const Vec3 n = cross(jet.r_x[k], jet.r_y[k]) / std::sqrt(g);
    f.n[k] = n;
    f.L[k] = dot(jet.r_xx[k], n);
    f.M[k] = dot(jet.r_xy[k], n);
    f.N[k] = dot(jet.r_yy[k], n);
  }
  return f;
}

Curvatures curvatures(const FundamentalForms& f) {
  Curvatures c{ScalarField(f.E.grid()), ScalarField(f.E.grid())};
  for (std::size_t k = 0; k < f.E.size(); ++k) {
    const double g = f.g[k];
    if (!(g > 0.0)) throw DegenerateMetric(k, g);
    c.H[k] = (f.E[k] * f.N[k] - 2.0 * f.F[k] * f.M[k] + f.G[k] * f.L[k]) / g;
    c.K[k] = (f.L[k] * f.N[k] - f.M[k] * f.M[k]) / g;
  }
  return c;
}

ScalarField scalar_curvature_e1(const Metric2& m, StencilOrder o, double g_floor) {
  const ScalarField &F = m.F, &G = m.G;
  const ScalarField Fx = dx(F, o), Fy = dy(F, o), Gx = dx(G, o), Gy = dy(G, o);
  const ScalarField Fxy = derivative(F, Deriv::XY, o), Gxx = derivative(G, Deriv::XX, o);
  ScalarField R(F.grid());
  for (std::size_t k = 0; k < R.size(); ++k) {
    const double g = G[k] - F[k] * F[k];
    if (!(g > g_floor)) throw DegenerateMetric(k, g);
    const double num = 4 * F[k] * Fx[k] * Fy[k] - 2 * Fx[k] * Gy[k] - 2 * F[k] * Fx[k] * Gx[k] +
                       Gx[k] * Gx[k] - 4 * F[k] * F[k] * Fxy[k] + 4 * G[k] * Fxy[k] +
                       2 * F[k] * F[k] * Gxx[k] - 2 * G[k] * Gxx[k];
    R[k] = num / (2 * g * g);
  }
  return R;
}

ScalarField scalar_curvature_f0(const ScalarField& G, StencilOrder order) {
  return scalar_curvature_f0(G, dx(G, order), derivative(G, Deriv::XX, order));
}

ScalarField scalar_curvature_f0(const ScalarField& G, const ScalarField& Gx,
                                const ScalarField& Gxx) {
  ScalarField R(G.grid());
  for (std::size_t k = 0; k < R.size(); ++k)
    R[k] = (Gx[k] * Gx[k] - 2.0 * G[k] * Gxx[k]) / (2.0 * G[k] * G[k]);
  return R;
}

ScalarField scalar_curvature_brioschi(const Metric2& m, StencilOrder o, double g_floor) {
  const ScalarField &E = m.E, &F = m.F, &G = m.G;
  const ScalarField Eu = dx(E, o), Ev = dy(E, o), Fu = dx(F, o), Fv = dy(F, o), Gu = dx(G, o),
                    Gv = dy(G, o);
  const ScalarField Evv = derivative(E, Deriv::YY, o), Fuv = derivative(F, Deriv::XY, o),
                    Guu = derivative(G, Deriv::XX, o);
  ScalarField R(E.grid());
  for (std::size_t k = 0; k < R.size(); ++k) {
    const double g = E[k] * G[k] - F[k] * F[k];
    if (!(g > g_floor)) throw DegenerateMetric(k, g);
    const std::array<std::array<double, 3>, 3> A{{
        {-0.5 * Evv[k] + Fuv[k] - 0.5 * Guu[k], 0.5 * Eu[k], Fu[k] - 0.5 * Ev[k]},
        {Fv[k] - 0.5 * Gu[k], E[k], F[k]},
        {0.5 * Gv[k], F[k], G[k]},
    }};
    const std::array<std::array<double, 3>, 3> B{{
        {0.0, 0.5 * Ev[k], 0.5 * Gu[k]},
        {0.5 * Ev[k], E[k], F[k]},
        {0.5 * Gu[k], F[k], G[k]},
    }};
    R[k] = 2.0 * (det3(A) - det3(B)) / (g * g);
  }
  return R;
}

Sym2Field ricci_tensor_2d(const Metric2& m, const ScalarField& R) {
  return {0.5 * (R * m.E), 0.5 * (R * m.F), 0.5 * (R * m.G)};
}

Sym2Field ricci_christoffel_2d(const Metric2& m, StencilOrder o, double g_floor) {
  const Grid2D& grid = m.E.grid();
  const std::size_t n = grid.size();
  auto d = [o](const ScalarField& f, int axis) { return axis == 0 ? dx(f, o) : dy(f, o); };

  // dg[I(k,i,j)] = d_k g_ij, Gam[I(a,i,j)] = Gamma^a_ij, dGam[m*8 + I(a,i,j)] = d_m Gamma^a_ij
  auto I = [](int a, int i, int j) { return 4 * a + 2 * i + j; };
  std::vector<ScalarField> dg(8, ScalarField(grid)), Gam(8, ScalarField(grid));
  for (int k = 0; k < 2; ++k) {
    dg[I(k, 0, 0)] = d(m.E, k);
    dg[I(k, 0, 1)] = dg[I(k, 1, 0)] = d(m.F, k);
    dg[I(k, 1, 1)] = d(m.G, k);
  }
  for (std::size_t k = 0; k < n; ++k) {
    const double g = m.E[k] * m.G[k] - m.F[k] * m.F[k];
    if (!(g > g_floor)) throw DegenerateMetric(k, g);
    const double inv[2][2] = {{m.G[k] / g, -m.F[k] / g}, {-m.F[k] / g, m.E[k] / g}};
    for (int a = 0; a < 2; ++a)
      for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) {
          double s = 0.0;
          for (int l = 0; l < 2; ++l)
            s += inv[a][l] * (dg[I(i, j, l)][k] + dg[I(j, i, l)][k] - dg[I(l, i, j)][k]);
          Gam[I(a, i, j)][k] = 0.5 * s;
        }
  }
  std::vector<ScalarField> dGam;
  dGam.reserve(16);
  for (int mm = 0; mm < 2; ++mm)
    for (int q = 0; q < 8; ++q) dGam.push_back(d(Gam[q], mm));

  Sym2Field out{ScalarField(grid), ScalarField(grid), ScalarField(grid)};
  for (std::size_t k = 0; k < n; ++k) {
    double Ric[2][2];
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) {
        double s = 0.0;
        for (int a = 0; a < 2; ++a) {
          s += dGam[8 * a + I(a, i, j)][k] - dGam[8 * j + I(a, i, a)][k];
          for (int l = 0; l < 2; ++l)
            s += Gam[I(a, a, l)][k] * Gam[I(l, i, j)][k] - Gam[I(a, j, l)][k] * Gam[I(l, i, a)][k];
        }
        Ric[i][j] = s;
      }
    out.xx[k] = Ric[0][0];
    out.xy[k] = 0.5 * (Ric[0][1] + Ric[1][0]);
    out.yy[k] = Ric[1][1];
  }
  return out;
}

ScalarField scalar_curvature_christoffel(const Metric2& m, StencilOrder order, double g_floor) {
  const Sym2Field ric = ricci_christoffel_2d(m, order, g_floor);
  ScalarField R(m.E.grid());
  for (std::size_t k = 0; k < R.size(); ++k) {
    const double g = m.E[k] * m.G[k] - m.F[k] * m.F[k];
    R[k] = (m.G[k] * ric.xx[k] - 2.0 * m.F[k] * ric.xy[k] + m.E[k] * ric.yy[k]) / g;
  }
  return R;
}

double max_abs_diff(const Sym2Field& a, const Sym2Field& b) {
  return std::max({max_abs(a.xx - b.xx), max_abs(a.xy - b.xy), max_abs(a.yy - b.yy)});
}

GraphJet graph_jet(const ScalarField& phi, StencilOrder o) {
  return {phi,
          dx(phi, o),
          dy(phi, o),
          derivative(phi, Deriv::XX, o),
          derivative(phi, Deriv::XY, o),
          derivative(phi, Deriv::YY, o)};
}

GraphSlopes graph_slopes(const GraphJet& gj, const ScalarField& r2x, const ScalarField& r2y,
                         const ScalarField& r1xx, const ScalarField& r2xx, SlopeBranch branch,
                         bool need_r1y) {
  const Grid2D& grid = gj.phi.grid();
  GraphSlopes out{ScalarField(grid), ScalarField(grid)};
  for (int j = 0; j < grid.ny(); ++j) {
    for (int i = 0; i < grid.nx(); ++i) {
      const std::size_t k = grid.index(i, j);
      const double p1 = gj.p1[k], p2 = gj.p2[k];
      const double a = 1.0 + p1 * p1;
      const double disc = a - (a + p2 * p2) * r2x[k] * r2x[k];
      if (disc < 0.0) throw NegativeDiscriminant(k, disc);
      const double root = std::sqrt(disc);
      const double plus = (-p1 * p2 * r2x[k] + root) / a;
      const double minus = (-p1 * p2 * r2x[k] - root) / a;
      double v = plus;
      if (branch == SlopeBranch::Minus) {
        v = minus;
      } else if (branch == SlopeBranch::Continuity && i > 0) {
        const double prev = out.r1x(i - 1, j);
        v = std::abs(plus - prev) <= std::abs(minus - prev) ? plus : minus;
      }
      out.r1x[k] = v;
    }
  }
  if (need_r1y) {
    for (std::size_t k = 0; k < grid.size(); ++k) {
      const double p1 = gj.p1[k];
      if (std::abs(p1) < 1e-12) throw VanishingSlope(k);
      out.r1y[k] = (out.r1x[k] * r2xx[k] - r1xx[k] * r2x[k] - gj.p2[k] * r2y[k]) / p1;
    }
  }
  return out;
}

ScalarField graph_mean_curvature(const GraphJet& gj) {
  ScalarField H(gj.phi.grid());
  for (std::size_t k = 0; k < H.size(); ++k) {
    const double p1 = gj.p1[k], p2 = gj.p2[k];
    const double W2 = 1.0 + p1 * p1 + p2 * p2;
    H[k] = ((1.0 + p2 * p2) * gj.p11[k] + (1.0 + p1 * p1) * gj.p22[k] -
            2.0 * p1 * p2 * gj.p12[k]) /
           (W2 * std::sqrt(W2));
  }
  return H;
}

VectorField3 inward_normal(const GraphJet& gj) {
  VectorField3 n(gj.phi.grid());
  for (std::size_t k = 0; k < n.size(); ++k) {
    const double W = std::sqrt(1.0 + gj.p1[k] * gj.p1[k] + gj.p2[k] * gj.p2[k]);
    n[k] = Vec3{-gj.p1[k], -gj.p2[k], 1.0} / W;
  }
  return n;
}

}  // namespace geoflow
