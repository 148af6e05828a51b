#pragma once

#include <functional>
#include <limits>
#include <string>
#include <vector>

namespace geoflow {

/// 1D chart in y. Periodic charts hold n nodes y_min + j L / n; open charts
/// include both endpoints, y_min + j L / (n - 1).
struct BurgersChart {
  int n = 128;
  double y_min = 0.0;
  double length = 1.0;
  bool periodic = true;

  double h() const { return periodic ? length / n : length / (n - 1); }
  double y(int j) const { return y_min + j * h(); }
};

/// Initial spectral parameter lambda(y, 0) and its y-derivative.
struct BurgersInitial {
  std::function<double(double)> value;
  std::function<double(double)> slope;
};

/// lambda(y, 0) = (a + y) / t0.
BurgersInitial burgers_linear(double a, double t0);
/// lambda(y, 0) = amplitude * sin(k y).
BurgersInitial burgers_sine(double amplitude = 1.0, double k = 1.0);

/// (a + y) / (t0 - t), the similarity solution of lambda_t = lambda lambda_y.
double burgers_exact(double a, double t0, double y, double t);
/// lambda_t - lambda lambda_y for burgers_exact, both sides in closed form.
double burgers_exact_residual(double a, double t0, double y, double t);

enum class BurgersScheme { Characteristics, Upwind };
BurgersScheme burgers_scheme_from_string(const std::string& name);

struct BurgersParams {
  double dt = 1e-3;
  int n_steps = 1000;
  int stride = 1;
  BurgersScheme scheme = BurgersScheme::Characteristics;
  double sign = 1.0;               ///< lambda_t = sign * lambda lambda_y
  double slope_ceiling = 1e3;      ///< max |lambda_y| that declares blow-up
  bool raise_on_blowup = false;    ///< throw BlowUp instead of returning
};

struct BurgersSnapshot {
  double t = 0.0;
  std::vector<double> lambda;
  double max_slope = 0.0;
};

struct BurgersResult {
  std::vector<BurgersSnapshot> snapshots;  ///< every stride steps plus the last
  bool blew_up = false;
  double t_blowup_est = std::numeric_limits<double>::quiet_NaN();
  double t_characteristics = std::numeric_limits<double>::infinity();
  double relative_gap = std::numeric_limits<double>::quiet_NaN();
};

/// Characteristic-crossing time 1 / max(sign * lambda_y(y, 0)) over the chart
/// nodes; infinity when no characteristics converge.
double characteristic_blowup_time(const BurgersChart& chart, const BurgersInitial& init,
                                  double sign = 1.0);

/// Evolves lambda on the chart until n_steps are done or max |lambda_y|
/// exceeds the ceiling. The characteristics scheme solves y0 - sign lambda0(y0) t = y
/// by safeguarded Newton at every node and is exact up to crossing. The upwind
/// scheme is Rusanov flux plus SSP-RK2 with linear extrapolation at open ends;
/// it throws UnstableStep when dt max|lambda| / h exceeds 1.
BurgersResult burgers_lambda_evolve(const BurgersChart& chart, const BurgersInitial& init,
                                    const BurgersParams& params);

}  // namespace geoflow
