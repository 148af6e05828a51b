#pragma once

#include <vector>

#include "geoflow/field.hpp"
#include "geoflow/stencil.hpp"

namespace geoflow {

/// How antiderivative_x inverts d/dx.
///   Spectral  - divides Fourier coefficients by i*k (exact for band-limited data).
///   Stencil2/Stencil4 - divides by the symbol of the matching central stencil, so
///   that derivative(F, X, order) reproduces f minus its row mean exactly
///   (up to the Nyquist mode, which the central stencils annihilate).
enum class AntiderivativeMode { Spectral, Stencil2, Stencil4 };

AntiderivativeMode consistent_with(StencilOrder order);

/// Largest |x-mean| over rows.
double max_row_mean(const ScalarField& f);

/// Periodic x-antiderivative with zero x-mean per row.
/// Throws SecularGrowth when some row mean exceeds tol_mean; below that the
/// row mean is discarded.
ScalarField antiderivative_x(const ScalarField& f, double tol_mean,
                             AntiderivativeMode mode = AntiderivativeMode::Spectral);
VectorField3 antiderivative_x(const VectorField3& f, double tol_mean,
                              AntiderivativeMode mode = AntiderivativeMode::Spectral);

struct HyperbolicTolerances {
  double mean = 1e-8;       ///< admissible |mean(rho)| relative to max(1, max|rho|)
  double resonance = 1e-8;  ///< admissible mode amplitude on near-null modes, same scaling
  double null_rel = 1e-10;  ///< |kx^2 - a^2 ky^2| <= null_rel * (kx^2 + a^2 ky^2) marks a null mode
};

/// Solves u_xx - alpha2 * u_yy = rho on the periodic grid by Fourier
/// diagonalization with exact (spectral) symbols. Output has zero mean.
/// Throws NonzeroMean or ResonantMode(kx, ky) with integer mode numbers.
ScalarField solve_hyperbolic_constraint(const ScalarField& rho, double alpha2,
                                        const HyperbolicTolerances& tol = {});

/// Spectral derivative (exact for band-limited data); the Nyquist mode is
/// dropped for odd derivative orders.
ScalarField fourier_derivative(const ScalarField& f, Deriv d);

}  // namespace geoflow
