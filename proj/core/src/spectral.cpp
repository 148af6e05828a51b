#include "geoflow/spectral.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <complex>
#include <map>
#include <mutex>
#include <numbers>
#include <tuple>

#include "geoflow/error.hpp"

namespace geoflow {

namespace {

using cplx = std::complex<double>;

// FFTW plans are created once per shape and executed with the new-array
// interface; planning is serialized, execution is reentrant.
class PlanCache {
 public:
  enum class Kind { RowsForward, RowsBackward, Full2DForward, Full2DBackward };

  fftw_plan get(Kind kind, int nx, int ny) {
    std::lock_guard<std::mutex> lock(mutex_);
    auto key = std::make_tuple(static_cast<int>(kind), nx, ny);
    auto it = plans_.find(key);
    if (it != plans_.end()) return it->second;
    const int nc = nx / 2 + 1;
    double* r = fftw_alloc_real(static_cast<std::size_t>(nx) * ny);
    fftw_complex* c = fftw_alloc_complex(static_cast<std::size_t>(nc) * ny);
    fftw_plan p = nullptr;
    int n[] = {nx};
    switch (kind) {
      case Kind::RowsForward:
        p = fftw_plan_many_dft_r2c(1, n, ny, r, nullptr, 1, nx, c, nullptr, 1, nc, FFTW_ESTIMATE);
        break;
      case Kind::RowsBackward:
        p = fftw_plan_many_dft_c2r(1, n, ny, c, nullptr, 1, nc, r, nullptr, 1, nx, FFTW_ESTIMATE);
        break;
      case Kind::Full2DForward: p = fftw_plan_dft_r2c_2d(ny, nx, r, c, FFTW_ESTIMATE); break;
      case Kind::Full2DBackward: p = fftw_plan_dft_c2r_2d(ny, nx, c, r, FFTW_ESTIMATE); break;
    }
    fftw_free(r);
    fftw_free(c);
    plans_.emplace(key, p);
    return p;
  }

  ~PlanCache() {
    for (auto& [k, p] : plans_) fftw_destroy_plan(p);
  }

 private:
  std::mutex mutex_;
  std::map<std::tuple<int, int, int>, fftw_plan> plans_;
};

PlanCache& plans() {
  static PlanCache cache;
  return cache;
}

// Owning FFTW-aligned buffers for one transform.
struct Buffers {
  Buffers(int nx, int ny)
      : nx(nx), ny(ny), nc(nx / 2 + 1),
        real(fftw_alloc_real(static_cast<std::size_t>(nx) * ny)),
        spec(fftw_alloc_complex(static_cast<std::size_t>(nc) * ny)) {}
  ~Buffers() {
    fftw_free(real);
    fftw_free(spec);
  }
  Buffers(const Buffers&) = delete;
  Buffers& operator=(const Buffers&) = delete;

  cplx& at(int m, int j) { return reinterpret_cast<cplx*>(spec)[static_cast<std::size_t>(j) * nc + m]; }

  int nx, ny, nc;
  double* real;
  fftw_complex* spec;
};

int signed_mode(int j, int n) { return j <= n / 2 ? j : j - n; }

void load(Buffers& b, const ScalarField& f) { std::copy(f.values().begin(), f.values().end(), b.real); }

ScalarField unload(const Buffers& b, const Grid2D& g, double scale) {
  ScalarField out(g);
  for (std::size_t k = 0; k < out.size(); ++k) out[k] = b.real[k] * scale;
  return out;
}

double check_row_means(const ScalarField& f, double tol_mean) {
  const auto means = row_means(f);
  double worst = 0.0;
  for (int j = 0; j < static_cast<int>(means.size()); ++j) {
    if (!(std::abs(means[j]) <= tol_mean)) throw SecularGrowth(j, means[j]);
    worst = std::max(worst, std::abs(means[j]));
  }
  return worst;
}

}  // namespace

AntiderivativeMode consistent_with(StencilOrder order) {
  return order == StencilOrder::Second ? AntiderivativeMode::Stencil2
                                       : AntiderivativeMode::Stencil4;
}

double max_row_mean(const ScalarField& f) {
  double worst = 0.0;
  for (double m : row_means(f)) worst = std::max(worst, std::abs(m));
  return worst;
}

ScalarField antiderivative_x(const ScalarField& f, double tol_mean, AntiderivativeMode mode) {
  check_row_means(f, tol_mean);
  const Grid2D& g = f.grid();
  Buffers b(g.nx(), g.ny());
  load(b, f);
  fftw_execute_dft_r2c(plans().get(PlanCache::Kind::RowsForward, g.nx(), g.ny()), b.real, b.spec);
  const double h = g.hx();
  for (int j = 0; j < g.ny(); ++j) {
    b.at(0, j) = 0.0;
    b.at(b.nc - 1, j) = 0.0;  // Nyquist
    for (int m = 1; m < b.nc - 1; ++m) {
      const double k = 2.0 * std::numbers::pi * m / g.Lx();
      double sym = k;
      if (mode == AntiderivativeMode::Stencil2)
        sym = first_derivative_symbol(k * h, StencilOrder::Second) / h;
      else if (mode == AntiderivativeMode::Stencil4)
        sym = first_derivative_symbol(k * h, StencilOrder::Fourth) / h;
      b.at(m, j) /= cplx(0.0, sym);
    }
  }
  fftw_execute_dft_c2r(plans().get(PlanCache::Kind::RowsBackward, g.nx(), g.ny()), b.spec, b.real);
  return unload(b, g, 1.0 / g.nx());
}

VectorField3 antiderivative_x(const VectorField3& f, double tol_mean, AntiderivativeMode mode) {
  return from_components(antiderivative_x(component(f, 0), tol_mean, mode),
                         antiderivative_x(component(f, 1), tol_mean, mode),
                         antiderivative_x(component(f, 2), tol_mean, mode));
}

ScalarField solve_hyperbolic_constraint(const ScalarField& rho, double alpha2,
                                        const HyperbolicTolerances& tol) {
  const Grid2D& g = rho.grid();
  const double scale = std::max(1.0, max_abs(rho));
  const double m0 = mean(rho);
  if (!(std::abs(m0) <= tol.mean * scale)) throw NonzeroMean(m0);

  Buffers b(g.nx(), g.ny());
  load(b, rho);
  fftw_execute_dft_r2c(plans().get(PlanCache::Kind::Full2DForward, g.nx(), g.ny()), b.real, b.spec);
  const double nn = static_cast<double>(g.size());
  for (int j = 0; j < g.ny(); ++j) {
    const int my = signed_mode(j, g.ny());
    const double ky = 2.0 * std::numbers::pi * my / g.Ly();
    for (int m = 0; m < b.nc; ++m) {
      const double kx = 2.0 * std::numbers::pi * m / g.Lx();
      if (m == 0 && j == 0) {
        b.at(m, j) = 0.0;
        continue;
      }
      const double sym = -kx * kx + alpha2 * ky * ky;
      const double ref = kx * kx + std::abs(alpha2) * ky * ky;
      if (std::abs(sym) <= tol.null_rel * ref) {
        const double amp = 2.0 * std::abs(b.at(m, j)) / nn;
        if (amp > tol.resonance * scale) throw ResonantMode(m, std::abs(my), amp);
        b.at(m, j) = 0.0;
        continue;
      }
      b.at(m, j) /= sym;
    }
  }
  fftw_execute_dft_c2r(plans().get(PlanCache::Kind::Full2DBackward, g.nx(), g.ny()), b.spec, b.real);
  return unload(b, g, 1.0 / nn);
}

ScalarField fourier_derivative(const ScalarField& f, Deriv d) {
  const Grid2D& g = f.grid();
  Buffers b(g.nx(), g.ny());
  load(b, f);
  fftw_execute_dft_r2c(plans().get(PlanCache::Kind::Full2DForward, g.nx(), g.ny()), b.real, b.spec);
  for (int j = 0; j < g.ny(); ++j) {
    const int my = signed_mode(j, g.ny());
    const bool ny_nyq = (j == g.ny() / 2);
    const double ky = 2.0 * std::numbers::pi * my / g.Ly();
    for (int m = 0; m < b.nc; ++m) {
      const bool nx_nyq = (m == b.nc - 1);
      const double kx = 2.0 * std::numbers::pi * m / g.Lx();
      cplx factor;
      switch (d) {
        case Deriv::X: factor = nx_nyq ? 0.0 : cplx(0.0, kx); break;
        case Deriv::Y: factor = ny_nyq ? 0.0 : cplx(0.0, ky); break;
        case Deriv::XX: factor = -kx * kx; break;
        case Deriv::YY: factor = -ky * ky; break;
        case Deriv::XY: factor = (nx_nyq || ny_nyq) ? 0.0 : -kx * ky; break;
      }
      b.at(m, j) *= factor;
    }
  }
  fftw_execute_dft_c2r(plans().get(PlanCache::Kind::Full2DBackward, g.nx(), g.ny()), b.spec, b.real);
  return unload(b, g, 1.0 / static_cast<double>(g.size()));
}

}  // namespace geoflow
