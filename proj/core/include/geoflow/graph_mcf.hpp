#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "geoflow/field.hpp"
#include "geoflow/integrator.hpp"
#include "geoflow/stencil.hpp"
#include "geoflow/surface.hpp"

namespace geoflow {

struct GraphState {
  ScalarField phi;
  double t = 0.0;
  Vec3 xi{};
};

/// Graph MCF with drift:
/// phi_t = [(1+p2^2) p11 + (1+p1^2) p22 - 2 p1 p2 p12] / W^2 + xi1 p1 + xi2 p2 - xi3.
ScalarField mcf_graph_rhs(const ScalarField& phi, const Vec3& xi, StencilOrder order);
/// Same with a node-dependent drift field.
ScalarField mcf_graph_rhs(const ScalarField& phi, const VectorField3& xi, StencilOrder order);

/// Discrete area of the graph, sum of W times cell area.
double graph_area(const ScalarField& phi, StencilOrder order);

/// Overwrites prescribed nodes after every stage, e.g. exact boundary data.
using PinHook = std::function<void(double t, ScalarField& phi)>;

struct McfParams {
  double dt = 1e-4;
  StencilOrder order = StencilOrder::Second;
  Integrator integrator = Integrator::RK4;
  double blowup_ceiling = 1e6;
  bool enforce_stability = true;
  PinHook pin;
};

struct GraphTrajectory {
  std::vector<GraphState> levels;
  std::vector<double> area;
};

/// Integrates n_steps with dt <= 0.2 min(h)^2. Throws UnstableStep or BlowUp
/// (when max |grad phi| or max |phi_t| exceeds the ceiling).
GraphTrajectory mcf_evolve(const GraphState& initial, const McfParams& params, int n_steps,
                           int stride = 1);

/// H n - xi (+ V). H and n from the fundamental forms of the jet.
VectorField3 parametric_normal_flow_rhs(const SurfaceJet& jet, const Vec3& xi,
                                        const VectorField3* V = nullptr);

/// General flow M n - xi + u r_x with a user normal speed M.
VectorField3 general_flow_rhs(const SurfaceJet& jet, const ScalarField& M, const Vec3& xi,
                              const ScalarField& u);

struct ParametricTrajectory {
  std::vector<LinearPlusPeriodic> levels;
  std::vector<double> times;
  std::vector<double> area;
};

/// Surface area sum(sqrt(g)) times cell area.
double surface_area(const SurfaceJet& jet);

/// Evolves r_t = H n - xi (+ V from anisotropy J when given) on the periodic
/// part of r; the linear part is held fixed. Requires dt <= 0.2 min(h)^2.
ParametricTrajectory parametric_evolve(const LinearPlusPeriodic& initial, const Vec3& xi,
                                       double dt, int n_steps, int stride, StencilOrder order,
                                       std::optional<Vec3> anisotropy = std::nullopt);

/// Per-level dissipation residual fields of a xi = 0 MCF trajectory.
struct DissipationFields {
  ScalarField log_area_rate;   ///< (ln sqrt g)_t + H^2
  ScalarField mean_curv_rate;  ///< H_t - (Lap_g H + |K|^2 H)
  ScalarField log_area_accel;  ///< (ln sqrt g)_tt + 2 H Lap_g H + 2 |K|^2 H^2
  ScalarField area_accel;      ///< (sqrt g)_tt - (-2 H Lap_g H - 2 |K|^2 H^2 + H^4) sqrt g
};

/// Residuals at stored level `center` using central time differences with
/// spacing dt_level. Throws InsufficientHistory without both neighbours.
DissipationFields dissipation_residuals(const std::vector<LinearPlusPeriodic>& levels,
                                        double dt_level, std::size_t center, StencilOrder order);

/// g^ij (d_ij f - Gamma^k_ij d_k f) for the metric of the given forms.
ScalarField laplace_beltrami(const Metric2& m, const ScalarField& f, StencilOrder order);

/// g^ik g^jl b_ij b_kl.
ScalarField second_form_norm2(const FundamentalForms& f);

}  // namespace geoflow
