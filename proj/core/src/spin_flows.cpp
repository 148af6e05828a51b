#include "geoflow/spin_flows.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "geoflow/error.hpp"
#include "geoflow/vector_ops.hpp"

namespace geoflow {

SpinFlow spin_flow_from_string(const std::string& name) {
  if (name == "hf") return SpinFlow::HF;
  if (name == "mi") return SpinFlow::MI;
  if (name == "ishimori") return SpinFlow::Ishimori;
  throw ConfigInvalid("unknown spin flow '" + name + "'");
}

const char* to_string(SpinFlow flow) {
  switch (flow) {
    case SpinFlow::HF: return "hf";
    case SpinFlow::MI: return "mi";
    case SpinFlow::Ishimori: return "ishimori";
  }
  return "?";
}

VectorField3 hf_rhs(const VectorField3& S, StencilOrder order) {
  return cross(S, derivative(S, Deriv::XX, order));
}

ScalarField mi_constraint_density(const VectorField3& S, StencilOrder order) {
  ScalarField q = triple(S, dx(S, order), dy(S, order));
  q *= -1.0;
  return q;
}

ConstraintSolution mi_constraint(const VectorField3& S, StencilOrder order,
                                 const ConstraintOptions& opts) {
  const ScalarField q = mi_constraint_density(S, order);
  ConstraintSolution out{
      antiderivative_x(q, opts.max_mean, opts.mode.value_or(consistent_with(order)))};
  out.max_row_mean = max_row_mean(q);
  out.warned = out.max_row_mean > opts.warn_mean;
  return out;
}

ScalarField mi_constraint_u(const VectorField3& S, StencilOrder order,
                            const ConstraintOptions& opts) {
  return mi_constraint(S, order, opts).u;
}

double mi_constraint_residual(const VectorField3& S, const ScalarField& u, StencilOrder order) {
  return max_abs(dx(u, order) - mi_constraint_density(S, order));
}

VectorField3 mi_rhs(const VectorField3& S, const ScalarField& u, StencilOrder order) {
  VectorField3 w = cross(S, dy(S, order));
  w += u * S;
  return dx(w, order);
}

ScalarField ishimori_constraint_u(const VectorField3& S, double alpha2, StencilOrder order,
                                  const HyperbolicTolerances& tol) {
  ScalarField rho = triple(S, dx(S, order), dy(S, order));
  rho *= -2.0 * alpha2;
  return solve_hyperbolic_constraint(rho, alpha2, tol);
}

VectorField3 ishimori_rhs(const VectorField3& S, const ScalarField& u, double alpha2,
                          StencilOrder order, bool project_drift) {
  const VectorField3 Sx = dx(S, order), Sy = dy(S, order);
  VectorField3 lap = derivative(S, Deriv::XX, order);
  lap += alpha2 * derivative(S, Deriv::YY, order);
  VectorField3 drift = dx(u, order) * Sy;
  drift += dy(u, order) * Sx;
  if (project_drift) drift = tangent_part(drift, S);
  return cross(S, lap) + drift;
}

VectorField3 anisotropy_velocity(const VectorField3& S, const Vec3& J, double tol_mean,
                                 AntiderivativeMode mode) {
  const VectorField3 w = map(S, [&J](const Vec3& s) { return cross(s, hadamard(J, s)); });
  return antiderivative_x(w, tol_mean, mode);
}

double max_stable_dt(SpinFlow flow, const Grid2D& g, const FlowParams& p) {
  const double s2 = max_second_derivative_symbol(p.order);
  double rho = 0.0;
  switch (flow) {
    case SpinFlow::HF: rho = s2 / (g.hx() * g.hx()); break;
    case SpinFlow::MI: {
      double s1 = 0.0;
      for (int k = 0; k <= 64; ++k)
        s1 = std::max(s1, std::abs(first_derivative_symbol(std::numbers::pi * k / 64.0, p.order)));
      rho = s1 * s1 / (g.hx() * g.hy());
      break;
    }
    case SpinFlow::Ishimori:
      rho = s2 / (g.hx() * g.hx()) + std::abs(p.alpha2) * s2 / (g.hy() * g.hy());
      break;
  }
  return stability_limit(p.integrator, rho, g.min_spacing());
}

namespace {

ScalarField solve_u(SpinFlow flow, const VectorField3& S, const FlowParams& p,
                    SpinTrajectory* log) {
  switch (flow) {
    case SpinFlow::HF: return ScalarField(S.grid());
    case SpinFlow::MI: {
      ConstraintSolution c = mi_constraint(S, p.order, p.constraint);
      if (log) {
        log->max_row_mean = std::max(log->max_row_mean, c.max_row_mean);
        log->constraint_warned = log->constraint_warned || c.warned;
      }
      return std::move(c.u);
    }
    case SpinFlow::Ishimori: return ishimori_constraint_u(S, p.alpha2, p.order);
  }
  return ScalarField(S.grid());
}

VectorField3 spin_rhs(SpinFlow flow, const VectorField3& S, const ScalarField& u,
                      const FlowParams& p) {
  switch (flow) {
    case SpinFlow::HF: return hf_rhs(S, p.order);
    case SpinFlow::MI: return mi_rhs(S, u, p.order);
    case SpinFlow::Ishimori: return ishimori_rhs(S, u, p.alpha2, p.order);
  }
  return VectorField3(S.grid());
}

}  // namespace

SpinState make_spin_state(SpinFlow flow, VectorField3 S, const FlowParams& params, double t) {
  ScalarField u = solve_u(flow, S, params, nullptr);
  return {std::move(S), std::move(u), t};
}

SpinTrajectory evolve(SpinFlow flow, const SpinState& initial, const FlowParams& p, int n_steps,
                      int stride, const StepObserver& observer) {
  if (!(p.dt > 0.0)) throw ConfigInvalid("dt must be positive");
  if (p.enforce_stability) {
    const double limit = max_stable_dt(flow, initial.S.grid(), p);
    if (p.dt > limit) throw UnstableStep(p.dt, limit);
  }
  stride = std::max(stride, 1);

  SpinTrajectory traj;
  auto record = [&](const SpinState& s) {
    traj.levels.push_back(s);
    traj.unit_defect.push_back(unit_defect(s.S));
    traj.constraint.push_back(flow == SpinFlow::MI ? mi_constraint_residual(s.S, s.u, p.order)
                                                   : 0.0);
    if (traj.constraint.back() > p.constraint_lost)
      throw ConstraintLost(s.t, traj.constraint.back());
  };

  SpinState state = initial;
  record(state);
  if (observer) observer(state);

  auto rhs = [&](double, const VectorField3& S) {
    const ScalarField u = solve_u(flow, S, p, &traj);
    return spin_rhs(flow, S, u, p);
  };

  for (int n = 1; n <= n_steps; ++n) {
    VectorField3 next = integrate_step(state.S, state.t, p.dt, p.integrator, rhs);
    const double t_next = initial.t + n * p.dt;
    if (!all_finite(next)) throw BlowUp(t_next, "S", std::numeric_limits<double>::infinity());
    const double rate = max_norm(next - state.S) / p.dt;
    if (rate > p.blowup_ceiling) throw BlowUp(t_next, "max|S_t|", rate);
    if (p.project_each_step) next = normalize(next);
    state.S = std::move(next);
    state.u = solve_u(flow, state.S, p, &traj);
    state.t = t_next;
    const double umax = max_abs(state.u);
    if (!(umax <= p.blowup_ceiling)) throw BlowUp(state.t, "max|u|", umax);
    if (n % stride == 0 || n == n_steps) {
      record(state);
    }
    if (observer) observer(state);
  }
  return traj;
}

}  // namespace geoflow
