#include <doctest.h>

#include <geoflow/error.hpp>
#include <geoflow/field.hpp>
#include <geoflow/io.hpp>
#include <geoflow/presets.hpp>
#include <geoflow/refinement.hpp>
#include <geoflow/spectral.hpp>
#include <geoflow/stencil.hpp>
#include <geoflow/vector_ops.hpp>

#include <cmath>
#include <filesystem>
#include <numbers>

#include "oracles.hpp"

using namespace geoflow;
using std::numbers::pi;

TEST_CASE("grid validation") {
  CHECK_THROWS_AS(Grid2D(4, 16, 1.0, 1.0), GridTooSmall);
  CHECK_THROWS_AS(Grid2D(16, 6, 1.0, 1.0), GridTooSmall);
  CHECK_THROWS_AS(Grid2D(9, 16, 1.0, 1.0), Error);
  CHECK_THROWS_AS(Grid2D(16, 16, 0.0, 1.0), Error);
  CHECK_THROWS_AS(Grid2D(16, 16, 1.0, std::nan("")), Error);
  const Grid2D g(16, 8, 2.0, 4.0);
  CHECK(g.hx() == doctest::Approx(0.125));
  CHECK(g.hy() == doctest::Approx(0.5));
  CHECK(g.index(3, 2) == 2 * 16 + 3);
  CHECK(g.wrap(-1, -1) == g.index(15, 7));
  CHECK(g.wrap(16, 8) == g.index(0, 0));
}

TEST_CASE("mismatched grids are rejected") {
  ScalarField a(Grid2D(16, 16, 1.0, 1.0)), b(Grid2D(16, 16, 2.0, 1.0));
  CHECK_THROWS_AS(a += b, Error);
  try {
    a -= b;
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::GridMismatch);
  }
}

TEST_CASE("derivative of a sine mode") {
  for (int order : {2, 4}) {
    const StencilOrder o = stencil_order_from_int(order);
    std::vector<double> hs, errs;
    for (int n : {32, 64, 128}) {
      const Grid2D g(n, 8, 1.0, 1.0);
      const ScalarField f = ScalarField::sample(g, [](double x, double) { return std::sin(2 * pi * x); });
      const ScalarField exact =
          ScalarField::sample(g, [](double x, double) { return 2 * pi * std::cos(2 * pi * x); });
      hs.push_back(g.hx());
      errs.push_back(max_abs(derivative(f, Deriv::X, o) - exact));
    }
    CHECK(fit_slope(hs, errs) == doctest::Approx(order).epsilon(0.3 / order));
  }
}

TEST_CASE("constants are annihilated exactly") {
  const Grid2D g(16, 16, 3.0, 2.0);
  const ScalarField c(g, 2.5);
  for (auto o : {StencilOrder::Second, StencilOrder::Fourth})
    for (auto d : {Deriv::X, Deriv::Y, Deriv::XX, Deriv::YY, Deriv::XY})
      CHECK(max_abs(derivative(c, d, o)) == 0.0);
}

TEST_CASE("stencils converge to the Fourier derivative on band-limited data") {
  for (int order : {2, 4}) {
    const StencilOrder o = stencil_order_from_int(order);
    for (Deriv d : {Deriv::X, Deriv::Y, Deriv::XX, Deriv::XY}) {
      std::vector<double> hs, errs;
      for (int n : {32, 64, 128}) {
        const Grid2D g(n, n, 2 * pi, 2 * pi);
        const ScalarField f = random_smooth_scalar(g, 7, 3, 1.0);
        hs.push_back(g.hx());
        errs.push_back(max_abs(derivative(f, d, o) - fourier_derivative(f, d)));
      }
      CHECK(std::abs(fit_slope(hs, errs) - order) <= 0.3);
    }
  }
}

TEST_CASE("stencil symbols match the stencils on plane waves") {
  const Grid2D g(32, 8, 2 * pi, 1.0);
  for (auto o : {StencilOrder::Second, StencilOrder::Fourth}) {
    const int m = 5;
    const ScalarField c = ScalarField::sample(g, [&](double x, double) { return std::cos(m * x); });
    const ScalarField s = ScalarField::sample(g, [&](double x, double) { return std::sin(m * x); });
    const double th = m * g.hx();
    const ScalarField d1 = derivative(s, Deriv::X, o), d2 = derivative(c, Deriv::XX, o);
    const double a = first_derivative_symbol(th, o) / g.hx();
    const double b = second_derivative_symbol(th, o) / (g.hx() * g.hx());
    CHECK(max_abs(d1 - a * c) < 1e-12);
    CHECK(max_abs(d2 - b * c) < 1e-11);
  }
  CHECK(max_second_derivative_symbol(StencilOrder::Second) == doctest::Approx(4.0));
  CHECK(max_second_derivative_symbol(StencilOrder::Fourth) == doctest::Approx(16.0 / 3.0));
}

TEST_CASE("antiderivative of a cosine mode") {
  const Grid2D g(64, 8, 3.0, 1.0);
  const ScalarField f = ScalarField::sample(g, [&](double x, double) { return std::cos(2 * pi * x / 3.0); });
  const ScalarField F = antiderivative_x(f, 1e-10);
  const ScalarField exact = ScalarField::sample(
      g, [&](double x, double) { return 3.0 / (2 * pi) * std::sin(2 * pi * x / 3.0); });
  CHECK(max_abs(F - exact) < 1e-13);
}

TEST_CASE("antiderivative of zero and of a constant") {
  const Grid2D g(16, 16, 1.0, 1.0);
  CHECK(max_abs(antiderivative_x(ScalarField(g), 1e-10)) == 0.0);
  try {
    antiderivative_x(ScalarField(g, 1.0), 1e-10);
    FAIL("expected SecularGrowth");
  } catch (const SecularGrowth& e) {
    CHECK(e.row() == 0);
    CHECK(e.mean() == doctest::Approx(1.0));
  }
}

TEST_CASE("antiderivative inverts the x-derivative up to the row mean") {
  const Grid2D g(64, 32, 2 * pi, 2 * pi);
  const ScalarField f = random_smooth_scalar(g, 3, 4, 1.0);
  for (auto o : {StencilOrder::Second, StencilOrder::Fourth}) {
    const ScalarField F = antiderivative_x(derivative(f, Deriv::X, o), 1e-10, consistent_with(o));
    ScalarField centered = f;
    const auto means = row_means(f);
    for (int j = 0; j < g.ny(); ++j)
      for (int i = 0; i < g.nx(); ++i) centered(i, j) -= means[j];
    CHECK(max_abs(F - centered) < 1e-10);
    CHECK(max_row_mean(F) < 1e-13);
  }
  // spectral inverse against the spectral derivative
  const ScalarField F = antiderivative_x(fourier_derivative(f, Deriv::X), 1e-10);
  ScalarField centered = f;
  const auto means = row_means(f);
  for (int j = 0; j < g.ny(); ++j)
    for (int i = 0; i < g.nx(); ++i) centered(i, j) -= means[j];
  CHECK(max_abs(F - centered) < 1e-10);
}

TEST_CASE("stencil-consistent antiderivative is reproduced exactly by the stencil") {
  const Grid2D g(48, 16, 2 * pi, 1.0);
  ScalarField f = random_smooth_scalar(g, 11, 5, 1.0);
  for (auto o : {StencilOrder::Second, StencilOrder::Fourth}) {
    const ScalarField F = antiderivative_x(f, 1.0, consistent_with(o));
    ScalarField centered = f;
    const auto means = row_means(f);
    for (int j = 0; j < g.ny(); ++j)
      for (int i = 0; i < g.nx(); ++i) centered(i, j) -= means[j];
    CHECK(max_abs(derivative(F, Deriv::X, o) - centered) < 1e-12);
  }
}

TEST_CASE("antiderivative agrees with an independent quadrature") {
  const Grid2D g(128, 8, 2 * pi, 1.0);
  const ScalarField f = random_smooth_scalar(g, 5, 3, 1.0);
  const ScalarField F = antiderivative_x(f, 10.0);
  CHECK(max_abs(F - oracle::trapezoid_antiderivative_x(f)) < 1e-6);
}

TEST_CASE("hyperbolic constraint single mode") {
  const Grid2D g(32, 32, 2 * pi, 2 * pi);
  const ScalarField rho =
      ScalarField::sample(g, [](double x, double y) { return std::cos(2 * x) * std::cos(y); });
  const ScalarField u = solve_hyperbolic_constraint(rho, 1.0);
  CHECK(max_abs(u + (1.0 / 3.0) * rho) < 1e-14);
  CHECK(std::abs(mean(u)) < 1e-15);
}

TEST_CASE("hyperbolic constraint trivial and singular data") {
  const Grid2D g(32, 32, 2 * pi, 2 * pi);
  CHECK(max_abs(solve_hyperbolic_constraint(ScalarField(g), 1.0)) == 0.0);
  const ScalarField res =
      ScalarField::sample(g, [](double x, double y) { return std::cos(x) * std::cos(y); });
  try {
    solve_hyperbolic_constraint(res, 1.0);
    FAIL("expected ResonantMode");
  } catch (const ResonantMode& e) {
    CHECK(e.kx() == 1);
    CHECK(e.ky() == 1);
  }
  CHECK_THROWS_AS(solve_hyperbolic_constraint(ScalarField(g, 0.5), 1.0), NonzeroMean);
}

TEST_CASE("hyperbolic constraint residual through stencils") {
  std::vector<double> hs, errs;
  for (int n : {32, 64, 128}) {
    const Grid2D g(n, n, 2 * pi, 2 * pi);
    // only modes with kx^2 != 2 ky^2 are present for alpha2 = 2 on this lattice
    const ScalarField rho = random_smooth_scalar(g, 21, 3, 1.0);
    const ScalarField u = solve_hyperbolic_constraint(rho, 2.0);
    const ScalarField lhs = derivative(u, Deriv::XX, StencilOrder::Fourth) -
                            2.0 * derivative(u, Deriv::YY, StencilOrder::Fourth);
    hs.push_back(g.hx());
    errs.push_back(max_abs(lhs - rho));
    const ScalarField spectral = fourier_derivative(u, Deriv::XX) - 2.0 * fourier_derivative(u, Deriv::YY);
    CHECK(max_abs(spectral - rho) <= 1e-10 * std::max(1.0, max_abs(rho)));
  }
  CHECK(std::abs(fit_slope(hs, errs) - 4.0) <= 0.3);
}

TEST_CASE("vector algebra") {
  const Grid2D g(8, 8, 1.0, 1.0);
  const VectorField3 e1(g, {1, 0, 0}), e2(g, {0, 1, 0}), e3(g, {0, 0, 1});
  CHECK(oracle::max_diff(cross(e1, e2), e3) == 0.0);
  CHECK(max_abs(dot(e1, e2)) == 0.0);
  CHECK(max_norm(cross(e1, e1)) == 0.0);
  const ScalarField t = triple(e1, e2, e3);
  for (double v : t.values()) CHECK(v == 1.0);
  const VectorField3 a = random_smooth_spin(Grid2D(32, 32, 1.0, 1.0), 1, 3, 0.5, false);
  const VectorField3 b = random_smooth_spin(Grid2D(32, 32, 1.0, 1.0), 2, 3, 0.5, false);
  CHECK(max_abs(dot(a, cross(a, b))) < 1e-13);
  CHECK(unit_defect(normalize(a)) < 1e-15);
  VectorField3 z = e1;
  z(3, 4) = {0, 0, 1e-14};
  try {
    normalize(z);
    FAIL("expected DegenerateVector");
  } catch (const DegenerateVector& e) {
    CHECK(e.node() == g.index(3, 4));
  }
}

TEST_CASE("csv round trip keeps every bit") {
  const Grid2D g(8, 8, 1.0, 2.0);
  const ScalarField f = random_smooth_scalar(g, 9, 2, 1.0);
  const auto path = std::filesystem::temp_directory_path() / "geoflow_rt.csv";
  write_csv(path, {{"f", f}});
  const auto back = read_fields_csv(path, g);
  REQUIRE(back.size() == 1);
  CHECK(back[0].first == "f");
  for (std::size_t k = 0; k < f.size(); ++k) CHECK(back[0].second[k] == f[k]);
  const auto table = read_csv(path);
  CHECK(table.header == std::vector<std::string>{"x", "y", "f"});
  std::filesystem::remove(path);
}
