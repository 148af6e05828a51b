#include "geoflow/graph_mcf.hpp"

#include <algorithm>
#include <cmath>

#include "geoflow/error.hpp"
#include "geoflow/spin_flows.hpp"
#include "geoflow/vector_ops.hpp"

namespace geoflow {

namespace {

template <class XiAt>
ScalarField graph_rhs_impl(const ScalarField& phi, StencilOrder order, XiAt&& xi_at) {
  const GraphJet j = graph_jet(phi, order);
  ScalarField out(phi.grid());
  for (std::size_t k = 0; k < out.size(); ++k) {
    const double p1 = j.p1[k], p2 = j.p2[k];
    const double W2 = 1.0 + p1 * p1 + p2 * p2;
    const Vec3 xi = xi_at(k);
    out[k] = ((1.0 + p2 * p2) * j.p11[k] + (1.0 + p1 * p1) * j.p22[k] - 2.0 * p1 * p2 * j.p12[k]) /
                 W2 +
             xi.x * p1 + xi.y * p2 - xi.z;
  }
  return out;
}

double max_gradient(const ScalarField& phi, StencilOrder order) {
  const ScalarField p1 = dx(phi, order), p2 = dy(phi, order);
  double m = 0.0;
  for (std::size_t k = 0; k < phi.size(); ++k) m = std::max(m, std::hypot(p1[k], p2[k]));
  return m;
}

}  // namespace

ScalarField mcf_graph_rhs(const ScalarField& phi, const Vec3& xi, StencilOrder order) {
  return graph_rhs_impl(phi, order, [&xi](std::size_t) { return xi; });
}

ScalarField mcf_graph_rhs(const ScalarField& phi, const VectorField3& xi, StencilOrder order) {
  require_same_grid(phi.grid(), xi.grid());
  return graph_rhs_impl(phi, order, [&xi](std::size_t k) { return xi[k]; });
}

double graph_area(const ScalarField& phi, StencilOrder order) {
  const ScalarField p1 = dx(phi, order), p2 = dy(phi, order);
  double s = 0.0;
  for (std::size_t k = 0; k < phi.size(); ++k) s += std::sqrt(1.0 + p1[k] * p1[k] + p2[k] * p2[k]);
  return s * phi.grid().cell_area();
}

GraphTrajectory mcf_evolve(const GraphState& initial, const McfParams& p, int n_steps,
                           int stride) {
  const Grid2D& g = initial.phi.grid();
  const double limit = 0.2 * g.min_spacing() * g.min_spacing();
  if (!(p.dt > 0.0)) throw ConfigInvalid("dt must be positive");
  if (p.enforce_stability && p.dt > limit) throw UnstableStep(p.dt, limit);
  stride = std::max(stride, 1);

  GraphTrajectory traj;
  GraphState state = initial;
  if (p.pin) p.pin(state.t, state.phi);
  traj.levels.push_back(state);
  traj.area.push_back(graph_area(state.phi, p.order));

  auto rhs = [&](double, const ScalarField& phi) { return mcf_graph_rhs(phi, state.xi, p.order); };
  auto hook = [&](double t, ScalarField& phi) {
    if (p.pin) p.pin(t, phi);
  };
  for (int n = 1; n <= n_steps; ++n) {
    ScalarField next = integrate_step(state.phi, state.t, p.dt, p.integrator, rhs, hook);
    const double t_next = initial.t + n * p.dt;
    if (!all_finite(next)) throw BlowUp(t_next, "phi", std::numeric_limits<double>::infinity());
    const double rate = max_abs(next - state.phi) / p.dt;
    if (rate > p.blowup_ceiling) throw BlowUp(t_next, "max|phi_t|", rate);
    const double grad = max_gradient(next, p.order);
    if (grad > p.blowup_ceiling) throw BlowUp(t_next, "max|grad phi|", grad);
    state.phi = std::move(next);
    state.t = t_next;
    if (n % stride == 0 || n == n_steps) {
      traj.levels.push_back(state);
      traj.area.push_back(graph_area(state.phi, p.order));
    }
  }
  return traj;
}

VectorField3 parametric_normal_flow_rhs(const SurfaceJet& jet, const Vec3& xi,
                                        const VectorField3* V) {
  const FundamentalForms f = fundamental_forms(jet);
  const Curvatures c = curvatures(f);
  VectorField3 out = c.H * f.n;
  for (auto& v : out.values()) v -= xi;
  if (V) out += *V;
  return out;
}

VectorField3 general_flow_rhs(const SurfaceJet& jet, const ScalarField& M, const Vec3& xi,
                              const ScalarField& u) {
  const FundamentalForms f = fundamental_forms(jet);
  VectorField3 out = M * f.n;
  for (auto& v : out.values()) v -= xi;
  out += u * jet.r_x;
  return out;
}

double surface_area(const SurfaceJet& jet) {
  const ScalarField E = dot(jet.r_x, jet.r_x), F = dot(jet.r_x, jet.r_y),
                    G = dot(jet.r_y, jet.r_y);
  double s = 0.0;
  for (std::size_t k = 0; k < E.size(); ++k) s += std::sqrt(std::max(E[k] * G[k] - F[k] * F[k], 0.0));
  return s * E.grid().cell_area();
}

ParametricTrajectory parametric_evolve(const LinearPlusPeriodic& initial, const Vec3& xi,
                                       double dt, int n_steps, int stride, StencilOrder order,
                                       std::optional<Vec3> anisotropy) {
  const Grid2D& g = initial.grid();
  const double limit = 0.2 * g.min_spacing() * g.min_spacing();
  if (!(dt > 0.0)) throw ConfigInvalid("dt must be positive");
  if (dt > limit) throw UnstableStep(dt, limit);
  stride = std::max(stride, 1);

  LinearPlusPeriodic r = initial;
  ParametricTrajectory traj;
  auto record = [&](double t) {
    traj.levels.push_back(r);
    traj.times.push_back(t);
    traj.area.push_back(surface_area(surface_jet(r, order)));
  };
  record(0.0);
  auto rhs = [&](double, const VectorField3& P) {
    LinearPlusPeriodic s{r.slope, r.slope_y, P};
    const SurfaceJet jet = surface_jet(s, order);
    if (anisotropy) {
      const VectorField3 V = anisotropy_velocity(jet.r_x, *anisotropy, 1e-6);
      return parametric_normal_flow_rhs(jet, xi, &V);
    }
    return parametric_normal_flow_rhs(jet, xi);
  };
  for (int n = 1; n <= n_steps; ++n) {
    r.periodic = integrate_step(r.periodic, (n - 1) * dt, dt, Integrator::RK4, rhs);
    if (!all_finite(r.periodic)) throw BlowUp(n * dt, "r", std::numeric_limits<double>::infinity());
    if (n % stride == 0 || n == n_steps) record(n * dt);
  }
  return traj;
}

ScalarField laplace_beltrami(const Metric2& m, const ScalarField& f, StencilOrder o) {
  const ScalarField fx = dx(f, o), fy = dy(f, o);
  ScalarField ax(f.grid()), ay(f.grid()), sg(f.grid());
  for (std::size_t k = 0; k < f.size(); ++k) {
    const double g = m.E[k] * m.G[k] - m.F[k] * m.F[k];
    const double s = std::sqrt(g);
    sg[k] = s;
    ax[k] = s * (m.G[k] * fx[k] - m.F[k] * fy[k]) / g;
    ay[k] = s * (-m.F[k] * fx[k] + m.E[k] * fy[k]) / g;
  }
  ScalarField out = dx(ax, o) + dy(ay, o);
  for (std::size_t k = 0; k < f.size(); ++k) out[k] /= sg[k];
  return out;
}

ScalarField second_form_norm2(const FundamentalForms& f) {
  ScalarField out(f.E.grid());
  for (std::size_t k = 0; k < out.size(); ++k) {
    const double g = f.g[k];
    const double i11 = f.G[k] / g, i12 = -f.F[k] / g, i22 = f.E[k] / g;
    // B = g^-1 b, |K|^2 = tr(B^2)
    const double b11 = i11 * f.L[k] + i12 * f.M[k], b12 = i11 * f.M[k] + i12 * f.N[k];
    const double b21 = i12 * f.L[k] + i22 * f.M[k], b22 = i12 * f.M[k] + i22 * f.N[k];
    out[k] = b11 * b11 + 2.0 * b12 * b21 + b22 * b22;
  }
  return out;
}

DissipationFields dissipation_residuals(const std::vector<LinearPlusPeriodic>& levels,
                                        double dt_level, std::size_t center, StencilOrder order) {
  if (levels.size() < 3) throw InsufficientHistory(levels.size(), 3);
  if (center == 0 || center + 1 >= levels.size()) throw InsufficientHistory(levels.size(), center + 2);

  auto forms_at = [&](std::size_t i) { return fundamental_forms(surface_jet(levels[i], order)); };
  const FundamentalForms f0 = forms_at(center - 1), f1 = forms_at(center), f2 = forms_at(center + 1);
  const ScalarField H0 = curvatures(f0).H, H1 = curvatures(f1).H, H2 = curvatures(f2).H;
  const ScalarField lapH = laplace_beltrami(f1.metric(), H1, order);
  const ScalarField A2 = second_form_norm2(f1);

  const Grid2D& g = H1.grid();
  DissipationFields out{ScalarField(g), ScalarField(g), ScalarField(g), ScalarField(g)};
  const double inv2 = 1.0 / (2.0 * dt_level), invsq = 1.0 / (dt_level * dt_level);
  for (std::size_t k = 0; k < g.size(); ++k) {
    const double l0 = 0.5 * std::log(f0.g[k]), l1 = 0.5 * std::log(f1.g[k]),
                 l2 = 0.5 * std::log(f2.g[k]);
    const double s0 = std::sqrt(f0.g[k]), s1 = std::sqrt(f1.g[k]), s2 = std::sqrt(f2.g[k]);
    const double H = H1[k];
    out.log_area_rate[k] = (l2 - l0) * inv2 + H * H;
    out.mean_curv_rate[k] = (H2[k] - H0[k]) * inv2 - (lapH[k] + A2[k] * H);
    out.log_area_accel[k] = (l2 - 2.0 * l1 + l0) * invsq + 2.0 * H * lapH[k] + 2.0 * A2[k] * H * H;
    out.area_accel[k] = (s2 - 2.0 * s1 + s0) * invsq -
                        (-2.0 * H * lapH[k] - 2.0 * A2[k] * H * H + H * H * H * H) * s1;
  }
  return out;
}

}  // namespace geoflow
