#include <doctest.h>

#include <geoflow/io.hpp>
#include <geoflow/presets.hpp>
#include <geoflow/spin_flows.hpp>
#include <geoflow/vector_ops.hpp>

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <numbers>

using namespace geoflow;
using std::numbers::pi;

TEST_CASE("random presets are seeded") {
  const Grid2D g(32, 32, 2 * pi, 2 * pi);
  const ScalarField a = random_smooth_scalar(g, 17, 3, 0.5);
  const ScalarField b = random_smooth_scalar(g, 17, 3, 0.5);
  const ScalarField c = random_smooth_scalar(g, 18, 3, 0.5);
  CHECK(std::equal(a.values().begin(), a.values().end(), b.values().begin()));
  CHECK(max_abs(a - c) > 1e-3);
  CHECK(max_abs(a) == doctest::Approx(0.5));
  CHECK(std::abs(mean(a)) <= 1e-15);

  UniformSource u(1), v(1);
  for (int k = 0; k < 100; ++k) {
    const double x = u.next();
    CHECK(x == v.next());
    CHECK(x >= 0.0);
    CHECK(x < 1.0);
  }
}

TEST_CASE("spin presets are unit vectors") {
  const Grid2D g(32, 16, 2 * pi, 2 * pi);
  CHECK(unit_defect(magnon(g, 1.1, 2)) <= 1e-15);
  CHECK(unit_defect(twisted_profile(g, 0.3, 1, 1)) <= 1e-15);
  CHECK(unit_defect(random_smooth_spin(g, 5, 3, 0.7, false)) <= 1e-15);
  const VectorField3 odd = random_smooth_spin(g, 5, 3, 0.7, true);
  CHECK(unit_defect(odd) <= 1e-15);
  for (double m : row_means(mi_constraint_density(odd, StencilOrder::Second))) CHECK(std::abs(m) <= 1e-14);
  CHECK(magnon_wavenumber(g, 2) == doctest::Approx(2.0));
}

TEST_CASE("twisted profile has vertical row means") {
  const Grid2D g(32, 32, 2 * pi, 2 * pi);
  const VectorField3 S = twisted_profile(g, 0.3, 0, 2);
  for (int c : {0, 1}) {
    for (double m : row_means(component(S, c))) CHECK(std::abs(m) <= 1e-14);
  }
  const std::vector<double> z = row_means(component(S, 2));
  for (double m : z) CHECK(m == doctest::Approx(z.front()).epsilon(1e-13));
}

TEST_CASE("scalar presets") {
  const Grid2D g(16, 16, 2.0, 4.0);
  const ScalarField f = fourier_mode(g, 1, 2, 0.5);
  CHECK(f(0, 0) == doctest::Approx(0.5));
  CHECK(f(8, 0) == doctest::Approx(-0.5));
  CHECK(f(0, 4) == doctest::Approx(-0.5));
  const ScalarField cap = sphere_cap(g, 0.8);
  CHECK(cap(8, 8) == doctest::Approx(0.8));
  CHECK(cap(0, 0) == 0.0);
}

TEST_CASE("number formatting") {
  for (double v : {0.1, 1.0 / 3.0, -2.5e-300, 6.02214076e23}) CHECK(std::strtod(format_double(v).c_str(), nullptr) == v);
  CHECK(format_double(0.5) == "0.5");
}
