#pragma once

#include <vector>

#include "geoflow/field.hpp"
#include "geoflow/spectral.hpp"
#include "geoflow/stencil.hpp"

namespace geoflow {

/// r with r_x = S: slope = per-row x-mean of S, periodic part = antiderivative.
LinearPlusPeriodic reconstruct_position(const VectorField3& S,
                                        AntiderivativeMode mode = AntiderivativeMode::Spectral);

/// Position derivatives needed by the fundamental forms.
struct SurfaceJet {
  VectorField3 r_x, r_y, r_xx, r_xy, r_yy;
  StencilOrder order = StencilOrder::Second;
};

/// Jet of a surface on the periodic (x, y) grid.
SurfaceJet surface_jet(const LinearPlusPeriodic& r, StencilOrder order);

/// Jet of a sheet swept in a flow variable: `levels` are positions at equally
/// spaced values y_n = y_0 + n * dy (rows of each level are independent
/// chains). y-derivatives are central level differences around `center`;
/// `drift` (optional, one row-vector per level) is added to r_y, so that the
/// sheet is r = reconstruction + integral of drift dy.
SurfaceJet sheet_jet(const std::vector<LinearPlusPeriodic>& levels, double dy, std::size_t center,
                     StencilOrder order, const std::vector<std::vector<Vec3>>& drift = {});

/// Row means of S x D_x S: the y-drift that makes the HF sheet satisfy r_y = r_x x r_xx.
std::vector<Vec3> hf_sheet_drift(const VectorField3& S, StencilOrder order);

/// First fundamental form samples (metric only).
struct Metric2 {
  ScalarField E, F, G;
};

struct FundamentalForms {
  ScalarField E, F, G, L, M, N, g;
  VectorField3 n;  ///< (r_x x r_y) / sqrt(g)
  Metric2 metric() const { return {E, F, G}; }
};

/// E = r_x^2, F = r_x.r_y, G = r_y^2, L = r_xx.n, M = r_xy.n, N = r_yy.n.
/// Throws DegenerateMetric where g <= g_floor.
FundamentalForms fundamental_forms(const SurfaceJet& jet, double g_floor = 1e-10);

struct Curvatures {
  ScalarField H, K;
};

/// H = (EN - 2FM + GL)/g (sum of principal curvatures), K = (LN - M^2)/g.
Curvatures curvatures(const FundamentalForms& f);

/// Closed form for E = 1 metrics in terms of F, G and their derivatives.
ScalarField scalar_curvature_e1(const Metric2& m, StencilOrder order, double g_floor = 1e-10);
/// F = 0, E = 1 case: R = (G_x^2 - 2 G G_xx) / (2 G^2).
ScalarField scalar_curvature_f0(const ScalarField& G, StencilOrder order);
ScalarField scalar_curvature_f0(const ScalarField& G, const ScalarField& G_x,
                                const ScalarField& G_xx);
/// R = 2K by the Brioschi formula, valid for any metric.
ScalarField scalar_curvature_brioschi(const Metric2& m, StencilOrder order,
                                      double g_floor = 1e-10);

/// Symmetric 2x2 tensor field.
struct Sym2Field {
  ScalarField xx, xy, yy;
};

/// R_ij = R g_ij / 2.
Sym2Field ricci_tensor_2d(const Metric2& m, const ScalarField& R);

/// Ricci tensor from finite-difference Christoffel symbols (symmetrized).
Sym2Field ricci_christoffel_2d(const Metric2& m, StencilOrder order, double g_floor = 1e-10);
/// g^ij R_ij of the direct Ricci tensor.
ScalarField scalar_curvature_christoffel(const Metric2& m, StencilOrder order,
                                         double g_floor = 1e-10);

/// max over nodes and components of |A_ij - B_ij|.
double max_abs_diff(const Sym2Field& a, const Sym2Field& b);

/// Graph r3 = phi(r1, r2) sampled on a periodic (r1, r2) grid.
struct GraphJet {
  ScalarField phi, p1, p2, p11, p12, p22;
};
GraphJet graph_jet(const ScalarField& phi, StencilOrder order);

enum class SlopeBranch { Plus, Minus, Continuity };

struct GraphSlopes {
  ScalarField r1x, r1y;
};

/// r1x from r_x^2 = 1 on the graph and r1y from the y-companion relation.
/// Continuity starts each row on the plus branch and then picks the root
/// closest to the x-neighbour. Throws NegativeDiscriminant or VanishingSlope.
GraphSlopes graph_slopes(const GraphJet& graph, const ScalarField& r2x, const ScalarField& r2y,
                         const ScalarField& r1xx, const ScalarField& r2xx, SlopeBranch branch,
                         bool need_r1y = true);

/// [(1+p2^2) p11 + (1+p1^2) p22 - 2 p1 p2 p12] / W^3, W = sqrt(1 + p1^2 + p2^2).
ScalarField graph_mean_curvature(const GraphJet& graph);
/// (-p1, -p2, 1) / W.
VectorField3 inward_normal(const GraphJet& graph);

}  // namespace geoflow
