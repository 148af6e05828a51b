#include "geoflow/metric_flows.hpp"

#include <algorithm>
#include <array>
#include <cmath>

#include "geoflow/error.hpp"
#include "geoflow/vector_ops.hpp"

namespace geoflow {

namespace {

ScalarField exp2_of(const ScalarField& phi) {
  return map(phi, [](double v) { return std::exp(2.0 * v); });
}

double min_of(const ScalarField& f) {
  return *std::min_element(f.values().begin(), f.values().end());
}

double max_of(const ScalarField& f) {
  return *std::max_element(f.values().begin(), f.values().end());
}

}  // namespace

// ---------------------------------------------------------------- M-I metric

MetricRates mi_metric_rhs(const FundamentalForms& f, const ScalarField& u, StencilOrder o) {
  const Grid2D& grid = f.E.grid();
  for (std::size_t k = 0; k < f.g.size(); ++k)
    if (!(f.g[k] > 0.0)) throw DegenerateMetric(k, f.g[k]);
  const ScalarField Fx = dx(f.F, o), Gx = dx(f.G, o), gx = dx(f.g, o);
  const ScalarField Ly = dy(f.L, o), My = dy(f.M, o), uy = dy(u, o);

  MetricRates r{ScalarField(grid), ScalarField(grid), ScalarField(grid), ScalarField(grid),
                ScalarField(grid)};
  for (std::size_t k = 0; k < grid.size(); ++k) {
    const double sg = std::sqrt(f.g[k]);
    const double a = f.F[k] * f.M[k] - f.N[k];
    r.F_t[k] = a * Fx[k] / sg - Ly[k] * sg + u[k] * Fx[k] + uy[k];
    r.G_t[k] = a * Gx[k] / sg - 2.0 * My[k] * sg + u[k] * Gx[k] + 2.0 * f.F[k] * uy[k];
    r.g_t[k] = r.G_t[k] - 2.0 * f.F[k] * r.F_t[k];
    r.g_t_closed[k] = gx[k] * a / sg - 2.0 * sg * (My[k] - f.F[k] * Ly[k]) + u[k] * gx[k];
  }
  return r;
}

FrameResidual mi_frame_decomposition_residual(const SurfaceJet& jet, const ScalarField& u,
                                              double g_floor) {
  const FundamentalForms f = fundamental_forms(jet, g_floor);
  const ScalarField Gx = dx(f.G, jet.order), Fx = dx(f.F, jet.order), ux = dx(u, jet.order);
  const Grid2D& grid = u.grid();
  FrameResidual out{ScalarField(grid), ScalarField(grid)};
  for (std::size_t k = 0; k < grid.size(); ++k) {
    const double sg = std::sqrt(f.g[k]);
    const Vec3 rt = cross(jet.r_x[k], jet.r_xy[k]) + u[k] * jet.r_x[k];
    const Vec3 frame = (f.M[k] * f.F[k] / sg + u[k]) * jet.r_x[k] - (f.M[k] / sg) * jet.r_y[k] +
                       (Gx[k] / (2.0 * sg)) * f.n[k];
    out.frame[k] = norm(rt - frame);
    out.u_x[k] = ux[k] - (f.L[k] * Gx[k] - 2.0 * f.M[k] * Fx[k]) / (2.0 * sg);
  }
  return out;
}

SurfaceJet mi_surface_jet(const VectorField3& S, StencilOrder order) {
  return surface_jet(reconstruct_position(S, consistent_with(order)), order);
}

// ------------------------------------------------------------ conformal RF

ScalarField conformal_scalar_curvature(const ScalarField& phi, StencilOrder order) {
  const ScalarField lap = laplacian(phi, order);
  ScalarField R(phi.grid());
  for (std::size_t k = 0; k < R.size(); ++k) R[k] = -2.0 * std::exp(-2.0 * phi[k]) * lap[k];
  return R;
}

double conformal_volume(const ScalarField& phi) { return integrate(exp2_of(phi)); }

double total_curvature(const ScalarField& phi, StencilOrder order) {
  return integrate(conformal_scalar_curvature(phi, order) * exp2_of(phi));
}

ScalarField conformal_rf_rhs(const ScalarField& phi, bool normalized, StencilOrder order) {
  return conformal_rf_rhs(phi, normalized, order, 0.0, {});
}

ScalarField conformal_rf_rhs(const ScalarField& phi, bool normalized, StencilOrder order, double t,
                             const MetricForcing& forcing) {
  const ScalarField R = conformal_scalar_curvature(phi, order);
  double mean_R = 0.0;
  if (normalized) {
    const ScalarField w = exp2_of(phi);
    mean_R = integrate(R * w) / integrate(w);
  }
  ScalarField out(phi.grid());
  for (std::size_t k = 0; k < out.size(); ++k) out[k] = 0.5 * (mean_R - R[k]);
  if (forcing) {
    const Sym2Field A = forcing(t, phi);
    for (std::size_t k = 0; k < out.size(); ++k)
      out[k] += 0.25 * (A.xx[k] + A.yy[k]) * std::exp(-2.0 * phi[k]);
  }
  return out;
}

double conformal_stability_limit(const ScalarField& phi) {
  const double h = phi.grid().min_spacing();
  return 0.2 * h * h * std::exp(2.0 * min_of(phi));
}

RfSample rf_sample(const ScalarField& phi, double t, StencilOrder order) {
  const ScalarField R = conformal_scalar_curvature(phi, order);
  const ScalarField w = exp2_of(phi);
  const double vol = integrate(w);
  return {t, vol, integrate(R * w) / vol, min_of(R), max_of(R)};
}

RfTrajectory conformal_rf_evolve(const ScalarField& phi0, bool normalized, double dt, int n_steps,
                                 int stride, StencilOrder order, const MetricForcing& forcing) {
  if (stride < 1) throw ConfigInvalid("stride must be positive");
  RfTrajectory traj;
  ScalarField phi = phi0;
  double t = 0.0;
  traj.levels.push_back(phi);
  traj.samples.push_back(rf_sample(phi, t, order));
  auto rhs = [&](double tt, const ScalarField& p) {
    return conformal_rf_rhs(p, normalized, order, tt, forcing);
  };
  for (int n = 1; n <= n_steps; ++n) {
    const double limit = conformal_stability_limit(phi);
    if (dt > limit) throw UnstableStep(dt, limit);
    phi = integrate_step(phi, t, dt, Integrator::RK4, rhs);
    t = n * dt;
    if (!all_finite(phi)) throw BlowUp(t, "phi", max_abs(phi));
    if (n % stride == 0 || n == n_steps) {
      traj.levels.push_back(phi);
      traj.samples.push_back(rf_sample(phi, t, order));
    }
  }
  return traj;
}

// ------------------------------------------------------------ coupled RF

CoupledVariant coupled_variant_from_string(const std::string& name) {
  if (name == "73" || name == "7.3" || name == "rf-coupled-73") return CoupledVariant::V73;
  if (name == "74" || name == "7.4" || name == "rf-coupled-74") return CoupledVariant::V74;
  if (name == "75" || name == "7.5" || name == "rf-coupled-75") return CoupledVariant::V75;
  if (name == "76" || name == "7.6" || name == "rf-coupled-76") return CoupledVariant::V76;
  throw ConfigInvalid("unknown coupled variant '" + name + "'");
}

bool second_order_in_time(CoupledVariant v) {
  return v == CoupledVariant::V73 || v == CoupledVariant::V75;
}

CoupledParams variant_defaults(CoupledVariant v, CoupledParams base) {
  if (v == CoupledVariant::V73 || v == CoupledVariant::V74) {
    base.beta = 1.0;
    base.alpha = 0.0;
  }
  return base;
}

CoupledRFState& CoupledRFState::operator+=(const CoupledRFState& o) {
  phi += o.phi;
  u += o.u;
  u_t += o.u_t;
  return *this;
}

CoupledRFState& CoupledRFState::operator*=(double s) {
  phi *= s;
  u *= s;
  u_t *= s;
  return *this;
}

CoupledRFState coupled_rf_rhs(const CoupledRFState& s, CoupledVariant v, const CoupledParams& p) {
  const Grid2D& grid = s.phi.grid();
  const ScalarField R = conformal_scalar_curvature(s.phi, p.order);
  CoupledRFState d{ScalarField(grid), ScalarField(grid), ScalarField(grid), s.t};
  if (!p.freeze_metric) {
    d.phi = conformal_rf_rhs(s.phi, false, p.order, s.t, p.forcing);
    for (std::size_t k = 0; k < grid.size(); ++k)
      d.phi[k] += 0.5 * (p.beta * s.u[k] + p.alpha_sign * p.alpha * R[k]);
  }
  ScalarField lap = laplacian(s.u + p.k * R, p.order);
  if (p.laplacian == LaplacianMode::Metric)
    for (std::size_t k = 0; k < grid.size(); ++k) lap[k] *= std::exp(-2.0 * s.phi[k]);
  if (second_order_in_time(v)) {
    d.u = s.u_t;
    d.u_t = std::move(lap);
  } else {
    d.u = std::move(lap);
  }
  return d;
}

CoupledRFState coupled_rf_step(const CoupledRFState& s, CoupledVariant v, const CoupledParams& p,
                               double dt) {
  if (p.enforce_stability) {
    const double limit = conformal_stability_limit(s.phi);
    if (dt > limit) throw UnstableStep(dt, limit);
  }
  auto rhs = [&](double t, const CoupledRFState& y) {
    CoupledRFState in = y;
    in.t = t;
    return coupled_rf_rhs(in, v, p);
  };
  CoupledRFState out = integrate_step(s, s.t, dt, Integrator::RK4, rhs);
  out.t = s.t + dt;
  for (const ScalarField* f : {&out.phi, &out.u, &out.u_t}) {
    if (!all_finite(*f)) throw BlowUp(out.t, "coupled state", max_abs(*f));
    if (max_abs(*f) > p.blowup_ceiling) throw BlowUp(out.t, "coupled state", max_abs(*f));
  }
  return out;
}

// ------------------------------------------------------------ 3D metric

namespace {

using Mat3 = std::array<std::array<double, 3>, 3>;

double det3_of(const Mat3& a) {
  return a[0][0] * (a[1][1] * a[2][2] - a[1][2] * a[2][1]) -
         a[0][1] * (a[1][0] * a[2][2] - a[1][2] * a[2][0]) +
         a[0][2] * (a[1][0] * a[2][1] - a[1][1] * a[2][0]);
}

Mat3 inverse3(const Mat3& a, double det) {
  Mat3 inv;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      const int i1 = (j + 1) % 3, i2 = (j + 2) % 3, j1 = (i + 1) % 3, j2 = (i + 2) % 3;
      inv[i][j] = (a[i1][j1] * a[i2][j2] - a[i1][j2] * a[i2][j1]) / det;
    }
  return inv;
}

const ScalarField& comp(const Metric3Sample& s, int i, int j) {
  if (i > j) std::swap(i, j);
  if (i == 0) return j == 0 ? s.G11 : (j == 1 ? s.G12 : s.G13);
  if (i == 1) return j == 1 ? s.G22 : s.G23;
  return s.G33;
}

Mat3 at_node(const Metric3Sample& s, std::size_t k) {
  Mat3 m;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) m[i][j] = comp(s, i, j)[k];
  return m;
}

// Christoffel symbols Gam[9a + 3i + j] and l = ln|det G| / 2 at one level.
struct LevelGeometry {
  std::vector<ScalarField> Gam;
  ScalarField ell;
};

LevelGeometry level_geometry(const std::vector<Metric3Sample>& samples, std::size_t lv,
                             double dt_level, StencilOrder o, double det_floor) {
  const Metric3Sample& s = samples[lv];
  const Grid2D& grid = s.G11.grid();
  // dG[9k + 3i + j] = d_k G_ij
  std::vector<ScalarField> dG(27, ScalarField(grid));
  for (int i = 0; i < 3; ++i)
    for (int j = i; j < 3; ++j) {
      const ScalarField& c = comp(s, i, j);
      const ScalarField gx = dx(c, o), gy = dy(c, o);
      const ScalarField gt =
          (1.0 / (2.0 * dt_level)) * (comp(samples[lv + 1], i, j) - comp(samples[lv - 1], i, j));
      for (const auto& [k, f] : {std::pair<int, const ScalarField*>{0, &gx}, {1, &gy}, {2, &gt}}) {
        dG[9 * k + 3 * i + j] = *f;
        dG[9 * k + 3 * j + i] = *f;
      }
    }
  LevelGeometry out{std::vector<ScalarField>(27, ScalarField(grid)), ScalarField(grid)};
  for (std::size_t n = 0; n < grid.size(); ++n) {
    const Mat3 G = at_node(s, n);
    const double det = det3_of(G);
    if (!(std::abs(det) > det_floor)) throw DegenerateMetric(n, det);
    const Mat3 inv = inverse3(G, det);
    out.ell[n] = 0.5 * std::log(std::abs(det));
    for (int a = 0; a < 3; ++a)
      for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
          double sum = 0.0;
          for (int l = 0; l < 3; ++l)
            sum += inv[a][l] *
                   (dG[9 * i + 3 * j + l][n] + dG[9 * j + 3 * i + l][n] - dG[9 * l + 3 * i + j][n]);
          out.Gam[9 * a + 3 * i + j][n] = 0.5 * sum;
        }
  }
  return out;
}

}  // namespace

double Tensor3Field::asymmetry() const {
  double worst = 0.0;
  for (int i = 0; i < 3; ++i)
    for (int j = i + 1; j < 3; ++j) worst = std::max(worst, max_abs((*this)(i, j) - (*this)(j, i)));
  return worst;
}

ScalarField det3(const Metric3Sample& s) {
  ScalarField out(s.G11.grid());
  for (std::size_t k = 0; k < out.size(); ++k) out[k] = det3_of(at_node(s, k));
  return out;
}

Metric3Sample metric3_sample(const SurfaceJet& jet, const ScalarField& u, double t) {
  const VectorField3 rt = cross(jet.r_x, jet.r_xy) + u * jet.r_x;
  return {dot(jet.r_x, jet.r_x), dot(jet.r_x, jet.r_y), dot(jet.r_x, rt),
          dot(jet.r_y, jet.r_y), dot(jet.r_y, rt),      dot(rt, rt),
          t};
}

Metric3Sample metric3_closed_form(const SurfaceJet& jet, const ScalarField& u,
                                  const Metric3Sample& s, ScalarField& det_out) {
  Metric3Sample c = s;
  det_out = ScalarField(u.grid());
  const ScalarField xy2 = dot(jet.r_xy, jet.r_xy);
  const ScalarField trip = dot(jet.r_xy, cross(jet.r_x, jet.r_y));
  for (std::size_t k = 0; k < u.size(); ++k) {
    const double G = s.G22[k], F = s.G12[k];
    c.G11[k] = 1.0;
    c.G13[k] = u[k];
    c.G23[k] = u[k] * G - trip[k];
    c.G33[k] = xy2[k] + u[k];
    det_out[k] = u[k] * u[k] * (xy2[k] - G) + u[k] * (G - F * F) + (G - F * F) * xy2[k];
  }
  return c;
}

Metric3Assembly assemble_metric3(const std::vector<SpinState>& levels, StencilOrder order) {
  Metric3Assembly out;
  double max_det = 0.0, det_diff = 0.0;
  Metric3Discrepancy& d = out.discrepancy;
  for (const SpinState& st : levels) {
    const SurfaceJet jet = mi_surface_jet(st.S, order);
    Metric3Sample s = metric3_sample(jet, st.u, st.t);
    ScalarField det_c(st.u.grid());
    Metric3Sample c = metric3_closed_form(jet, st.u, s, det_c);
    const ScalarField det_s = det3(s);
    d.G11_gauge = std::max(d.G11_gauge, max_abs(s.G11 - ScalarField(st.u.grid(), 1.0)));
    d.G13 = std::max(d.G13, max_abs(s.G13 - c.G13));
    d.G23 = std::max(d.G23, max_abs(s.G23 - c.G23));
    d.G33 = std::max(d.G33, max_abs(s.G33 - c.G33));
    det_diff = std::max(det_diff, max_abs(det_s - det_c));
    max_det = std::max(max_det, max_abs(det_s));
    out.samples.push_back(std::move(s));
    out.closed_form.push_back(std::move(c));
    out.det_closed.push_back(std::move(det_c));
  }
  d.det = det_diff;
  d.det_rel = max_det > 0.0 ? det_diff / max_det : det_diff;
  return out;
}

Tensor3Field ricci3_numeric(const std::vector<Metric3Sample>& samples, double dt_level,
                            std::size_t center, StencilOrder o, double det_floor) {
  if (samples.size() < 5 || center < 2 || center + 2 >= samples.size())
    throw InsufficientHistory(samples.size(), std::max<std::size_t>(5, center + 3));
  const Grid2D& grid = samples[center].G11.grid();
  for (const Metric3Sample& s : samples) require_same_grid(grid, s.G11.grid());

  const LevelGeometry lo = level_geometry(samples, center - 1, dt_level, o, det_floor);
  const LevelGeometry mid = level_geometry(samples, center, dt_level, o, det_floor);
  const LevelGeometry hi = level_geometry(samples, center + 1, dt_level, o, det_floor);
  const double inv2dt = 1.0 / (2.0 * dt_level);

  auto d_of = [&](const LevelGeometry& m, const LevelGeometry& l, const LevelGeometry& h, int q,
                  int axis) {
    if (axis == 0) return dx(m.Gam[q], o);
    if (axis == 1) return dy(m.Gam[q], o);
    return inv2dt * (h.Gam[q] - l.Gam[q]);
  };
  // Hessian of ell with commuting difference operators.
  const ScalarField ell_t = inv2dt * (hi.ell - lo.ell);
  auto hess = [&](int i, int j) {
    if (i > j) std::swap(i, j);
    if (j < 2) {
      if (i == 0 && j == 0) return derivative(mid.ell, Deriv::XX, o);
      if (i == 1 && j == 1) return derivative(mid.ell, Deriv::YY, o);
      return derivative(mid.ell, Deriv::XY, o);
    }
    if (i == 2) return ScalarField((1.0 / (dt_level * dt_level)) * (hi.ell - 2.0 * mid.ell + lo.ell));
    return i == 0 ? dx(ell_t, o) : dy(ell_t, o);
  };

  Tensor3Field ric(grid);
  for (int i = 0; i < 3; ++i)
    for (int j = i; j < 3; ++j) {
      ScalarField r = ScalarField(grid) - hess(i, j);
      for (int a = 0; a < 3; ++a) r += d_of(mid, lo, hi, 9 * a + 3 * i + j, a);
      for (std::size_t n = 0; n < grid.size(); ++n) {
        double s = 0.0;
        for (int a = 0; a < 3; ++a)
          for (int l = 0; l < 3; ++l)
            s += mid.Gam[9 * a + 3 * a + l][n] * mid.Gam[9 * l + 3 * i + j][n] -
                 mid.Gam[9 * a + 3 * j + l][n] * mid.Gam[9 * l + 3 * i + a][n];
        r[n] += s;
      }
      ric(i, j) = r;
      ric(j, i) = r;
    }
  return ric;
}

std::vector<Tensor3Field> ricci3_sequence(const std::vector<Metric3Sample>& samples,
                                          double dt_level, StencilOrder order, double det_floor) {
  if (samples.size() < 5) throw InsufficientHistory(samples.size(), 5);
  std::vector<Tensor3Field> out;
  for (std::size_t c = 2; c + 2 < samples.size(); ++c)
    out.push_back(ricci3_numeric(samples, dt_level, c, order, det_floor));
  return out;
}

}  // namespace geoflow
