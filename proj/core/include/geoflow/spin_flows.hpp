#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "geoflow/field.hpp"
#include "geoflow/integrator.hpp"
#include "geoflow/spectral.hpp"
#include "geoflow/stencil.hpp"

namespace geoflow {

enum class SpinFlow { HF, MI, Ishimori };

SpinFlow spin_flow_from_string(const std::string& name);
const char* to_string(SpinFlow flow);

/// S_y = S x S_xx (y is the evolution variable; rows are independent chains).
VectorField3 hf_rhs(const VectorField3& S, StencilOrder order);

/// -S . (S_x x S_y), the x-derivative that u must reproduce.
ScalarField mi_constraint_density(const VectorField3& S, StencilOrder order);

struct ConstraintOptions {
  double warn_mean = 1e-10;  ///< row means above this are reported
  double max_mean = 1e-6;    ///< row means above this raise SecularGrowth
  /// Inversion of d/dx; unset means the stencil-consistent inverse.
  std::optional<AntiderivativeMode> mode;
};

struct ConstraintSolution {
  ScalarField u;
  double max_row_mean = 0.0;
  bool warned = false;
};

/// Solves u_x = -S . (S_x x S_y) with zero x-mean per row. The antiderivative
/// inverts the same stencil used for the density so that D_x u reproduces it.
ConstraintSolution mi_constraint(const VectorField3& S, StencilOrder order,
                                 const ConstraintOptions& opts = {});
ScalarField mi_constraint_u(const VectorField3& S, StencilOrder order,
                            const ConstraintOptions& opts = {});

/// max |D_x u + S . (S_x x S_y)| over nodes.
double mi_constraint_residual(const VectorField3& S, const ScalarField& u, StencilOrder order);

/// S_t = (S x S_y + u S)_x.
VectorField3 mi_rhs(const VectorField3& S, const ScalarField& u, StencilOrder order);

/// Solves u_xx - alpha2 u_yy = -2 alpha2 S . (S_x x S_y).
ScalarField ishimori_constraint_u(const VectorField3& S, double alpha2, StencilOrder order,
                                  const HyperbolicTolerances& tol = {});

/// S_t = S x (S_xx + alpha2 S_yy) + u_x S_y + u_y S_x. With project_drift the
/// u-drift is restricted to the tangent plane of S (it is tangent in the
/// continuum; the discrete S_x, S_y are only tangent to truncation order).
VectorField3 ishimori_rhs(const VectorField3& S, const ScalarField& u, double alpha2,
                          StencilOrder order, bool project_drift = true);

/// V with V_x = S x J S (J diagonal), zero x-mean gauge.
VectorField3 anisotropy_velocity(const VectorField3& S, const Vec3& J, double tol_mean = 1e-8,
                                 AntiderivativeMode mode = AntiderivativeMode::Spectral);

struct FlowParams {
  double dt = 1e-3;
  Integrator integrator = Integrator::RK4;
  bool project_each_step = true;
  StencilOrder order = StencilOrder::Second;
  double alpha2 = 1.0;
  double blowup_ceiling = 1e6;
  double constraint_lost = 1e-4;
  bool enforce_stability = true;
  ConstraintOptions constraint{};
};

/// Largest step the explicit guard admits for this flow on this grid.
double max_stable_dt(SpinFlow flow, const Grid2D& grid, const FlowParams& params);

struct SpinState {
  VectorField3 S;
  ScalarField u;
  double t = 0.0;
};

/// Fills u for the given flow (zero for HF).
SpinState make_spin_state(SpinFlow flow, VectorField3 S, const FlowParams& params, double t = 0.0);

struct SpinTrajectory {
  std::vector<SpinState> levels;     ///< stored every `stride` steps, first and last always
  std::vector<double> unit_defect;   ///< max ||S|-1| per stored level
  std::vector<double> constraint;    ///< M-I constraint residual per stored level (0 otherwise)
  double max_row_mean = 0.0;         ///< worst solvability defect seen by the M-I solver
  bool constraint_warned = false;
};

using StepObserver = std::function<void(const SpinState&)>;

/// Integrates n_steps of the chosen flow. u is re-solved at every stage.
/// Throws UnstableStep, BlowUp or ConstraintLost.
SpinTrajectory evolve(SpinFlow flow, const SpinState& initial, const FlowParams& params,
                      int n_steps, int stride = 1, const StepObserver& observer = {});

}  // namespace geoflow
