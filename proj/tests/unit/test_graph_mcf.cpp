#include <doctest.h>

#include <geoflow/error.hpp>
#include <geoflow/graph_mcf.hpp>
#include <geoflow/presets.hpp>
#include <geoflow/refinement.hpp>
#include <geoflow/spin_flows.hpp>
#include <geoflow/vector_ops.hpp>

#include <algorithm>
#include <cmath>
#include <numbers>

#include "oracles.hpp"

using namespace geoflow;
using std::numbers::pi;

namespace {

ScalarField constant(const Grid2D& g, double v) { return ScalarField(g, v); }

LinearPlusPeriodic random_surface(const Grid2D& g, std::uint64_t seed, double eps) {
  return {std::vector<Vec3>(g.ny(), Vec3{1, 0, 0}), Vec3{0, 1, 0},
          from_components(random_smooth_scalar(g, seed, 3, eps),
                          random_smooth_scalar(g, seed + 100, 3, eps),
                          random_smooth_scalar(g, seed + 200, 3, eps))};
}

LinearPlusPeriodic sphere(const Grid2D& g, double rho) {
  const double s = 0.5 * g.hx();
  return {std::vector<Vec3>(g.ny()), Vec3{}, VectorField3::sample(g, [=](double x, double y) {
            return rho * Vec3{std::sin(x + s) * std::cos(y), std::sin(x + s) * std::sin(y),
                              std::cos(x + s)};
          })};
}

// Shrinking sphere centred in an L x L chart: nodes farther than r_b from the
// centre are held at the exact solution.
struct PinnedCap {
  Grid2D g;
  double r_b;
  std::vector<std::size_t> pinned;

  PinnedCap(const Grid2D& grid, double rb) : g(grid), r_b(rb) {
    for (int j = 0; j < g.ny(); ++j)
      for (int i = 0; i < g.nx(); ++i)
        if (radius(i, j) > r_b) pinned.push_back(g.index(i, j));
  }
  double radius(int i, int j) const {
    return std::hypot(g.x(i) - 0.5 * g.Lx(), g.y(j) - 0.5 * g.Ly());
  }
  double exact(int i, int j, double t) const {
    const double rho2 = 1.0 - 4.0 * t, r = radius(i, j);
    return std::sqrt(std::max(rho2 - r * r, 0.0));
  }
  ScalarField at(double t) const {
    ScalarField f(g);
    for (int j = 0; j < g.ny(); ++j)
      for (int i = 0; i < g.nx(); ++i) f(i, j) = exact(i, j, t);
    return f;
  }
  PinHook hook() const {
    return [this](double t, ScalarField& phi) {
      for (std::size_t k : pinned)
        phi[k] = exact(static_cast<int>(k % g.nx()), static_cast<int>(k / g.nx()), t);
    };
  }
};

}  // namespace

TEST_CASE("graph rhs") {
  const Grid2D g(32, 32, 1.0, 1.0);
  CHECK(max_abs(mcf_graph_rhs(constant(g, 2.0), Vec3{}, StencilOrder::Second)) == 0.0);
  CHECK(max_abs(mcf_graph_rhs(constant(g, 2.0), Vec3{0, 0, 1}, StencilOrder::Second) + constant(g, 1)) == 0.0);

  const ScalarField phi = 0.1 * fourier_mode(g, 1, 2);
  const Vec3 xi{0.3, -0.2, 0.5};
  CHECK(max_abs(mcf_graph_rhs(phi, xi, StencilOrder::Fourth) -
                mcf_graph_rhs(phi, VectorField3(g, xi), StencilOrder::Fourth)) == 0.0);

  const Grid2D gc(64, 64, 1.0, 1.0);
  const ScalarField cap = sphere_cap(gc, 1.0);
  CHECK(mcf_graph_rhs(cap, Vec3{}, StencilOrder::Fourth)(32, 32) == doctest::Approx(-2.0).epsilon(1e-6));
}

TEST_CASE("graph evolution") {
  const Grid2D g(16, 16, 1.0, 1.0);
  McfParams p;
  p.dt = 0.2 * g.hx() * g.hx();
  const GraphTrajectory plane = mcf_evolve({constant(g, 0.5), 0.0, {}}, p, 50, 10);
  CHECK(plane.levels.size() == 6);
  CHECK(max_abs(plane.levels.back().phi - constant(g, 0.5)) == 0.0);

  McfParams bad = p;
  bad.dt = 0.21 * g.hx() * g.hx();
  CHECK_THROWS_AS(mcf_evolve({constant(g, 0.5), 0.0, {}}, bad, 1), UnstableStep);
  bad = p;
  bad.blowup_ceiling = 1e-3;
  CHECK_THROWS_AS(mcf_evolve({0.2 * fourier_mode(g, 1, 1), 0.0, {}}, bad, 5), BlowUp);
}

TEST_CASE("shrinking sphere with pinned annulus") {
  const PinnedCap cap(Grid2D(32, 32, 0.6, 0.6), 0.2);
  McfParams p;
  const int steps = static_cast<int>(std::ceil(0.1875 / (0.2 * cap.g.hx() * cap.g.hx())));
  p.dt = 0.1875 / steps;
  p.pin = cap.hook();
  const GraphTrajectory tr = mcf_evolve({cap.at(0.0), 0.0, {}}, p, steps, steps / 6);
  for (const GraphState& s : tr.levels) {
    const double rho = std::sqrt(1.0 - 4.0 * s.t);
    CHECK(std::abs(s.phi(16, 16) - rho) / rho <= 1e-3);
  }
  CHECK(tr.levels.back().t == doctest::Approx(0.1875));
}

TEST_CASE("drift equals a translated driftless run") {
  const Grid2D g(32, 32, 2 * pi, 2 * pi);
  const ScalarField phi0 = 0.3 * fourier_mode(g, 1, 1) + 0.2 * fourier_mode(g, 2, 1);
  // xi1 = 4h / T shifts the characteristics by four cells in x at time T
  const double T = 0.2;
  const Vec3 xi{4 * g.hx() / T, 0.0, 0.7};
  McfParams p;
  const int steps = static_cast<int>(std::ceil(T / (0.2 * g.hx() * g.hx())));
  p.dt = T / steps;
  const ScalarField with = mcf_evolve({phi0, 0.0, xi}, p, steps, steps).levels.back().phi;
  const ScalarField without = mcf_evolve({phi0, 0.0, {}}, p, steps, steps).levels.back().phi;
  ScalarField shifted(g);
  for (int j = 0; j < g.ny(); ++j)
    for (int i = 0; i < g.nx(); ++i) shifted(i, j) = without[g.wrap(i + 4, j)] - xi.z * T;
  CHECK(max_abs(with - shifted) <= 5e-3);
}

TEST_CASE("area decreases and order is preserved") {
  const Grid2D g(24, 24, 2 * pi, 2 * pi);
  McfParams p;
  p.dt = 0.2 * g.hx() * g.hx();
  const ScalarField lo = 0.4 * fourier_mode(g, 1, 1);
  const ScalarField hi = lo + constant(g, 0.05) + 0.02 * fourier_mode(g, 2, 0);
  const GraphTrajectory a = mcf_evolve({lo, 0.0, {}}, p, 100, 1);
  const GraphTrajectory b = mcf_evolve({hi, 0.0, {}}, p, 100, 1);
  for (std::size_t i = 1; i < a.area.size(); ++i) CHECK(a.area[i] <= a.area[i - 1] + 1e-10);
  CHECK(a.area.back() < a.area.front());
  for (std::size_t i = 0; i < a.levels.size(); ++i) {
    const ScalarField d = b.levels[i].phi - a.levels[i].phi;
    CHECK(*std::min_element(d.values().begin(), d.values().end()) >= 0.0);
  }
}

TEST_CASE("parametric normal flow") {
  const Grid2D g(16, 16, 1.0, 1.0);
  const LinearPlusPeriodic plane{std::vector<Vec3>(16, Vec3{1, 0, 0}), Vec3{0, 1, 0}, VectorField3(g)};
  CHECK(max_norm(parametric_normal_flow_rhs(surface_jet(plane, StencilOrder::Second), Vec3{})) == 0.0);
  const VectorField3 drift = parametric_normal_flow_rhs(surface_jet(plane, StencilOrder::Second), Vec3{1, 2, 3});
  CHECK(oracle::max_diff(drift, VectorField3(g, Vec3{-1, -2, -3})) == 0.0);

  const Grid2D gs(128, 128, 2 * pi, 2 * pi);
  const LinearPlusPeriodic s = sphere(gs, 1.0);
  const VectorField3 rt = parametric_normal_flow_rhs(surface_jet(s, StencilOrder::Fourth), Vec3{});
  double worst = 0.0;
  for (int j = 0; j < gs.ny(); ++j)
    for (int i = 0; i < gs.nx(); ++i)
      if (std::abs(std::sin(gs.x(i) + 0.5 * gs.hx())) >= 0.5)
        worst = std::max(worst, norm(rt(i, j) + 2.0 * s.periodic(i, j)));
  CHECK(worst <= 1e-5);

  const LinearPlusPeriodic r = random_surface(Grid2D(32, 32, 2 * pi, 2 * pi), 4, 0.1);
  const ParametricTrajectory iso = parametric_evolve(r, Vec3{}, 1e-3, 10, 10, StencilOrder::Second, Vec3{2, 2, 2});
  const ParametricTrajectory plain = parametric_evolve(r, Vec3{}, 1e-3, 10, 10, StencilOrder::Second);
  CHECK(oracle::max_diff(iso.levels.back().periodic, plain.levels.back().periodic) <= 1e-15);
}

TEST_CASE("dissipation residuals") {
  SUBCASE("plane") {
    const Grid2D g(16, 16, 1.0, 1.0);
    const LinearPlusPeriodic plane{std::vector<Vec3>(16, Vec3{1, 0, 0}), Vec3{0, 1, 0}, VectorField3(g)};
    const DissipationFields d = dissipation_residuals({plane, plane, plane}, 0.1, 1, StencilOrder::Second);
    CHECK(max_abs(d.log_area_rate) + max_abs(d.mean_curv_rate) + max_abs(d.log_area_accel) +
              max_abs(d.area_accel) == 0.0);
    CHECK_THROWS_AS(dissipation_residuals({plane, plane}, 0.1, 1, StencilOrder::Second), InsufficientHistory);
    CHECK_THROWS_AS(dissipation_residuals({plane, plane, plane}, 0.1, 2, StencilOrder::Second), InsufficientHistory);
  }

  SUBCASE("exact shrinking sphere") {
    std::vector<double> hs, errs;
    for (int n : {32, 64, 128}) {
      const Grid2D g(n, n, 2 * pi, 2 * pi);
      const double dt = g.hx() / 8, t = 0.05;
      std::vector<LinearPlusPeriodic> lv;
      for (int s = -1; s <= 1; ++s) lv.push_back(sphere(g, std::sqrt(1.0 - 4.0 * (t + s * dt))));
      const DissipationFields d = dissipation_residuals(lv, dt, 1, StencilOrder::Second);
      double worst = 0.0;
      for (int j = 0; j < n; ++j)
        for (int i = 0; i < n; ++i)
          if (std::abs(std::sin(g.x(i) + 0.5 * g.hx())) >= 0.5) worst = std::max(worst, std::abs(d.log_area_rate(i, j)));
      hs.push_back(g.hx());
      errs.push_back(worst);
    }
    CHECK(errs.back() <= 1e-2);
    CHECK(oracle::slope(hs, errs) >= 1.7);
  }

  SUBCASE("evolved surface") {
    std::vector<double> hs, e1, e2, e3, e4;
    const double t_c = 0.3;
    for (int n : {16, 32, 64}) {
      const Grid2D g(n, n, 2 * pi, 2 * pi);
      const double level = 2.4 / n;
      const int stride = static_cast<int>(std::ceil(level / (0.2 * g.hx() * g.hx())));
      const int levels = static_cast<int>(std::lround(t_c / level)) + 1;
      const ParametricTrajectory tr = parametric_evolve(random_surface(g, 1, 0.1), Vec3{}, level / stride,
                                                        levels * stride, stride, StencilOrder::Second);
      const DissipationFields d = dissipation_residuals(tr.levels, level, levels - 1, StencilOrder::Second);
      CHECK(tr.times[levels - 1] == doctest::Approx(t_c));
      hs.push_back(g.hx());
      e1.push_back(max_abs(d.log_area_rate));
      e2.push_back(max_abs(d.mean_curv_rate));
      e3.push_back(max_abs(d.log_area_accel));
      e4.push_back(max_abs(d.area_accel));
      for (std::size_t i = 1; i < tr.area.size(); ++i) CHECK(tr.area[i] <= tr.area[i - 1] + 1e-10);
    }
    for (const auto* e : {&e1, &e2, &e3, &e4}) CHECK(oracle::slope(hs, *e) >= 1.7);
  }
}

TEST_CASE("inverse metric evolution") {
  std::vector<double> hs, errs;
  for (int n : {16, 32, 64}) {
    const Grid2D g(n, n, 2 * pi, 2 * pi);
    const double level = 2.4 / n;
    const int stride = static_cast<int>(std::ceil(level / (0.2 * g.hx() * g.hx())));
    const int c = static_cast<int>(std::lround(0.3 / level));
    const ParametricTrajectory tr = parametric_evolve(random_surface(g, 2, 0.1), Vec3{}, level / stride,
                                                      (c + 1) * stride, stride, StencilOrder::Second);
    FundamentalForms f[3] = {fundamental_forms(surface_jet(tr.levels[c - 1], StencilOrder::Second)),
                             fundamental_forms(surface_jet(tr.levels[c], StencilOrder::Second)),
                             fundamental_forms(surface_jet(tr.levels[c + 1], StencilOrder::Second))};
    const ScalarField H = curvatures(f[1]).H;
    double worst = 0.0;
    for (std::size_t k = 0; k < g.size(); ++k) {
      auto inv = [&](int l) {
        const double d = f[l].g[k];
        return std::array<double, 3>{f[l].G[k] / d, -f[l].F[k] / d, f[l].E[k] / d};
      };
      const auto a = inv(0), c = inv(2), m = inv(1);
      // b^ij = g^ik g^jl b_kl
      const double L = f[1].L[k], M = f[1].M[k], N = f[1].N[k];
      const double b11 = m[0] * m[0] * L + 2 * m[0] * m[1] * M + m[1] * m[1] * N;
      const double b12 = m[0] * m[1] * L + (m[0] * m[2] + m[1] * m[1]) * M + m[1] * m[2] * N;
      const double b22 = m[1] * m[1] * L + 2 * m[1] * m[2] * M + m[2] * m[2] * N;
      const double rate[3] = {(c[0] - a[0]) / (2 * level), (c[1] - a[1]) / (2 * level), (c[2] - a[2]) / (2 * level)};
      worst = std::max({worst, std::abs(rate[0] - 2 * H[k] * b11), std::abs(rate[1] - 2 * H[k] * b12),
                        std::abs(rate[2] - 2 * H[k] * b22)});
    }
    hs.push_back(g.hx());
    errs.push_back(worst);
  }
  CHECK(oracle::slope(hs, errs) >= 1.7);
}
