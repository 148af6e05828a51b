#pragma once

#include <functional>
#include <string>
#include <vector>

#include "geoflow/field.hpp"
#include "geoflow/integrator.hpp"
#include "geoflow/spin_flows.hpp"
#include "geoflow/stencil.hpp"
#include "geoflow/surface.hpp"

namespace geoflow {

// ---------------------------------------------------------------- M-I metric

struct MetricRates {
  ScalarField E_t, F_t, G_t;
  ScalarField g_t;         ///< G_t - 2 F F_t
  ScalarField g_t_closed;  ///< g_x (FM - N)/sqrt(g) - 2 sqrt(g)(M_y - F L_y) + u g_x
};

/// Induced-metric rates of the M-I surface (E = 1 gauge).
MetricRates mi_metric_rhs(const FundamentalForms& forms, const ScalarField& u, StencilOrder order);

struct FrameResidual {
  ScalarField frame;  ///< |r_x x r_xy + u r_x - [(MF/sg + u) r_x - (M/sg) r_y + (G_x/2sg) n]|
  ScalarField u_x;    ///< u_x - (L G_x - 2 M F_x) / (2 sg)
};

/// Pointwise residuals of the frame decomposition of r_t (E = 1 surfaces).
FrameResidual mi_frame_decomposition_residual(const SurfaceJet& jet, const ScalarField& u,
                                              double g_floor = 1e-10);

/// Jet of the surface with r_x = S, using the stencil-consistent antiderivative.
SurfaceJet mi_surface_jet(const VectorField3& S, StencilOrder order);

// ------------------------------------------------------------ conformal RF

/// R = -2 exp(-2 phi) Lap phi for g = exp(2 phi) delta.
ScalarField conformal_scalar_curvature(const ScalarField& phi, StencilOrder order);

/// Symmetric forcing A_ij(t, phi) added to g_t; only its trace enters the
/// conformal gauge, as phi_t += (A_xx + A_yy) exp(-2 phi) / 4.
using MetricForcing = std::function<Sym2Field(double t, const ScalarField& phi)>;

/// Plain: phi_t = -R/2. Normalized: phi_t = (<R> - R)/2 with the area-weighted mean.
ScalarField conformal_rf_rhs(const ScalarField& phi, bool normalized, StencilOrder order);
ScalarField conformal_rf_rhs(const ScalarField& phi, bool normalized, StencilOrder order,
                             double t, const MetricForcing& forcing);

/// 0.2 min(h)^2 exp(2 min phi).
double conformal_stability_limit(const ScalarField& phi);

/// Integral of exp(2 phi) over the chart.
double conformal_volume(const ScalarField& phi);
/// Integral of R dA.
double total_curvature(const ScalarField& phi, StencilOrder order);

struct RfSample {
  double t, volume, mean_R, min_R, max_R;
};

struct RfTrajectory {
  std::vector<ScalarField> levels;
  std::vector<RfSample> samples;
};

/// RK4 integration of the conformal flow; dt <= 0.2 min(h)^2 exp(2 min phi).
/// Throws UnstableStep or BlowUp.
RfTrajectory conformal_rf_evolve(const ScalarField& phi0, bool normalized, double dt, int n_steps,
                                 int stride, StencilOrder order,
                                 const MetricForcing& forcing = {});
RfSample rf_sample(const ScalarField& phi, double t, StencilOrder order);

// ------------------------------------------------------------ coupled RF

enum class CoupledVariant { V73, V74, V75, V76 };
CoupledVariant coupled_variant_from_string(const std::string& name);
bool second_order_in_time(CoupledVariant v);

enum class LaplacianMode { Metric, Flat };

struct CoupledParams {
  double beta = 1.0;
  double alpha = 0.0;
  double alpha_sign = 1.0;  ///< sign convention multiplying alpha R
  double k = 0.0;
  LaplacianMode laplacian = LaplacianMode::Metric;
  bool freeze_metric = false;
  StencilOrder order = StencilOrder::Second;
  double blowup_ceiling = 1e6;
  bool enforce_stability = true;
  MetricForcing forcing;
};

/// Parameters for the variant; 7.3/7.4 force beta = 1, alpha = 0.
CoupledParams variant_defaults(CoupledVariant v, CoupledParams base);

struct CoupledRFState {
  ScalarField phi, u, u_t;
  double t = 0.0;

  CoupledRFState& operator+=(const CoupledRFState& o);
  CoupledRFState& operator*=(double s);
  friend CoupledRFState operator+(CoupledRFState a, const CoupledRFState& b) { return a += b; }
  friend CoupledRFState operator*(double s, CoupledRFState a) { return a *= s; }
};

/// Time derivative of (phi, u, u_t) for the chosen variant.
CoupledRFState coupled_rf_rhs(const CoupledRFState& s, CoupledVariant v, const CoupledParams& p);

/// One RK4 step. Throws UnstableStep when dt > 0.2 min(h)^2 exp(2 min phi), BlowUp
/// when a field exceeds the ceiling.
CoupledRFState coupled_rf_step(const CoupledRFState& s, CoupledVariant v, const CoupledParams& p,
                               double dt);

// ------------------------------------------------------------ 3D metric

struct Metric3Sample {
  ScalarField G11, G12, G13, G22, G23, G33;
  double t = 0.0;
};

/// 3x3 tensor field, all nine components stored.
struct Tensor3Field {
  std::vector<ScalarField> c;
  explicit Tensor3Field(const Grid2D& g) : c(9, ScalarField(g)) {}
  ScalarField& operator()(int i, int j) { return c[3 * i + j]; }
  const ScalarField& operator()(int i, int j) const { return c[3 * i + j]; }
  /// max |T_ij - T_ji|.
  double asymmetry() const;
};

ScalarField det3(const Metric3Sample& s);

struct Metric3Discrepancy {
  double G11_gauge;   ///< max |G11 - 1|
  double G13, G23, G33, det;  ///< max |direct - closed form|
  double det_rel;     ///< det discrepancy relative to max |det direct|
};

struct Metric3Assembly {
  std::vector<Metric3Sample> samples;
  std::vector<Metric3Sample> closed_form;  ///< closed forms, same fields
  std::vector<ScalarField> det_closed;
  Metric3Discrepancy discrepancy{};
};

/// G from r_x, r_y and r_t = r_x x r_xy + u r_x.
Metric3Sample metric3_sample(const SurfaceJet& jet, const ScalarField& u, double t);
/// Closed forms for G11, G13, G23, G33 (other entries copied from
/// `direct`) and the determinant polynomial.
Metric3Sample metric3_closed_form(const SurfaceJet& jet, const ScalarField& u,
                                  const Metric3Sample& direct, ScalarField& det_out);

/// Builds G at every level of an M-I trajectory.
Metric3Assembly assemble_metric3(const std::vector<SpinState>& levels, StencilOrder order);

/// Ricci tensor of the 3D metric at samples[center] from finite-difference
/// Christoffel symbols in (x, y, t). Needs two levels on each side.
/// Throws InsufficientHistory or DegenerateMetric.
Tensor3Field ricci3_numeric(const std::vector<Metric3Sample>& samples, double dt_level,
                            std::size_t center, StencilOrder order, double det_floor = 1e-12);

/// Ricci tensor at every level that has two neighbours on each side.
std::vector<Tensor3Field> ricci3_sequence(const std::vector<Metric3Sample>& samples,
                                          double dt_level, StencilOrder order,
                                          double det_floor = 1e-12);

}  // namespace geoflow
