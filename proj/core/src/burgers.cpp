#include "geoflow/burgers.hpp"

#include <algorithm>
#include <cmath>

#include "geoflow/error.hpp"

namespace geoflow {

namespace {

// Root of y0 - s lambda0(y0) t = y, strictly increasing in y0 before crossing.
double foot(const BurgersInitial& init, double s, double t, double y, double guess) {
  auto F = [&](double z) { return z - s * t * init.value(z) - y; };
  double lo = guess, hi = guess, step = 1e-3 + std::abs(guess - y);
  while (F(lo) > 0.0) {
    lo -= step;
    step *= 2.0;
  }
  step = 1e-3 + std::abs(guess - y);
  while (F(hi) < 0.0) {
    hi += step;
    step *= 2.0;
  }
  double z = std::clamp(guess, lo, hi);
  for (int it = 0; it < 200; ++it) {
    const double f = F(z);
    if (f == 0.0) return z;
    (f < 0.0 ? lo : hi) = z;
    const double d = 1.0 - s * t * init.slope(z);
    double next = d > 0.0 ? z - f / d : 0.5 * (lo + hi);
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    if (std::abs(next - z) <= 1e-15 * (1.0 + std::abs(z))) return next;
    z = next;
  }
  return z;
}

double max_abs_of(const std::vector<double>& v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, std::abs(x));
  return m;
}

std::vector<double> fd_slope(const BurgersChart& c, const std::vector<double>& l) {
  const int n = c.n;
  const double h = c.h();
  std::vector<double> out(n);
  for (int j = 0; j < n; ++j) {
    if (c.periodic) {
      out[j] = (l[(j + 1) % n] - l[(j + n - 1) % n]) / (2.0 * h);
    } else if (j == 0) {
      out[j] = (l[1] - l[0]) / h;
    } else if (j == n - 1) {
      out[j] = (l[n - 1] - l[n - 2]) / h;
    } else {
      out[j] = (l[j + 1] - l[j - 1]) / (2.0 * h);
    }
  }
  return out;
}

std::vector<double> rusanov_rate(const BurgersChart& c, const std::vector<double>& l, double s) {
  const int n = c.n;
  std::vector<double> ext(n + 2);
  std::copy(l.begin(), l.end(), ext.begin() + 1);
  if (c.periodic) {
    ext[0] = l[n - 1];
    ext[n + 1] = l[0];
  } else {
    ext[0] = 2.0 * l[0] - l[1];
    ext[n + 1] = 2.0 * l[n - 1] - l[n - 2];
  }
  auto f = [s](double v) { return -0.5 * s * v * v; };
  std::vector<double> flux(n + 1);
  for (int k = 0; k <= n; ++k) {
    const double a = ext[k], b = ext[k + 1];
    flux[k] = 0.5 * (f(a) + f(b)) - 0.5 * std::max(std::abs(a), std::abs(b)) * (b - a);
  }
  std::vector<double> out(n);
  for (int j = 0; j < n; ++j) out[j] = -(flux[j + 1] - flux[j]) / c.h();
  return out;
}

}  // namespace

BurgersInitial burgers_linear(double a, double t0) {
  return {[a, t0](double y) { return (a + y) / t0; }, [t0](double) { return 1.0 / t0; }};
}

BurgersInitial burgers_sine(double amplitude, double k) {
  return {[=](double y) { return amplitude * std::sin(k * y); },
          [=](double y) { return amplitude * k * std::cos(k * y); }};
}

double burgers_exact(double a, double t0, double y, double t) { return (a + y) / (t0 - t); }

double burgers_exact_residual(double a, double t0, double y, double t) {
  const double lambda_t = (a + y) / ((t0 - t) * (t0 - t));
  const double lambda = (a + y) / (t0 - t);
  const double lambda_y = 1.0 / (t0 - t);
  return lambda_t - lambda * lambda_y;
}

BurgersScheme burgers_scheme_from_string(const std::string& name) {
  if (name == "characteristics") return BurgersScheme::Characteristics;
  if (name == "upwind") return BurgersScheme::Upwind;
  throw ConfigInvalid("unknown Burgers scheme '" + name + "'");
}

double characteristic_blowup_time(const BurgersChart& chart, const BurgersInitial& init, double sign) {
  double m = 0.0;
  for (int j = 0; j < chart.n; ++j) m = std::max(m, sign * init.slope(chart.y(j)));
  return m > 0.0 ? 1.0 / m : std::numeric_limits<double>::infinity();
}

BurgersResult burgers_lambda_evolve(const BurgersChart& chart, const BurgersInitial& init,
                                    const BurgersParams& p) {
  if (chart.n < 8) throw GridTooSmall(chart.n, 8);
  if (!(chart.length > 0.0)) throw ConfigInvalid("chart length must be positive");
  if (!(p.dt > 0.0) || p.n_steps < 0 || p.stride < 1) throw ConfigInvalid("invalid Burgers step parameters");
  if (!init.value || !init.slope) throw ConfigInvalid("initial profile needs value and slope");

  const double s = p.sign;
  const int n = chart.n;
  BurgersResult res;
  res.t_characteristics = characteristic_blowup_time(chart, init, s);

  std::vector<double> y0(n), lambda(n), slope(n);
  for (int j = 0; j < n; ++j) {
    y0[j] = chart.y(j);
    lambda[j] = init.value(y0[j]);
    slope[j] = init.slope(y0[j]);
  }

  auto snapshot = [&](double t) { res.snapshots.push_back({t, lambda, max_abs_of(slope)}); };
  snapshot(0.0);

  for (int step = 1; step <= p.n_steps; ++step) {
    const double t = step * p.dt;
    if (p.scheme == BurgersScheme::Characteristics) {
      for (int j = 0; j < n; ++j) {
        y0[j] = foot(init, s, t, chart.y(j), y0[j]);
        lambda[j] = init.value(y0[j]);
        const double d0 = init.slope(y0[j]);
        const double jac = 1.0 - s * t * d0;
        slope[j] = jac > 0.0 ? d0 / jac : std::numeric_limits<double>::infinity();
      }
    } else {
      const double limit = chart.h() / std::max(max_abs_of(lambda), 1e-300);
      if (p.dt > limit) throw UnstableStep(p.dt, limit);
      const std::vector<double> k1 = rusanov_rate(chart, lambda, s);
      std::vector<double> stage(n);
      for (int j = 0; j < n; ++j) stage[j] = lambda[j] + p.dt * k1[j];
      const std::vector<double> k2 = rusanov_rate(chart, stage, s);
      for (int j = 0; j < n; ++j) lambda[j] = 0.5 * (lambda[j] + stage[j] + p.dt * k2[j]);
      slope = fd_slope(chart, lambda);
    }
    const double m = max_abs_of(slope);
    const bool blown = !(m <= p.slope_ceiling);
    if (blown || step % p.stride == 0 || step == p.n_steps) snapshot(t);
    if (blown) {
      res.blew_up = true;
      res.t_blowup_est = t;
      if (std::isfinite(res.t_characteristics))
        res.relative_gap = std::abs(t - res.t_characteristics) / res.t_characteristics;
      if (p.raise_on_blowup) throw BlowUp(t, "max |lambda_y|", m);
      break;
    }
  }
  return res;
}

}  // namespace geoflow
