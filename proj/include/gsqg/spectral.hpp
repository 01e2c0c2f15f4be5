#pragma once

#include <complex>
#include <functional>

#include "gsqg/fft.hpp"
#include "gsqg/grid.hpp"

namespace gsqg {

// Relative tolerance below which a field counts as mean-free.
inline constexpr double kMeanTol = 1e-12;

void require_mean_zero(const ScalarField2D& f, const char* who);
void require_mean_zero(const VectorField2D& u, const char* who);

// Apply a diagonal Fourier multiplier m(k1, k2) given physical wavenumbers.
using Multiplier = std::function<std::complex<double>(double k1, double k2)>;
Spectrum2D apply_multiplier(const Spectrum2D& s, const Multiplier& m);

// (-Laplace)^sigma. Zero mode goes to 0 for sigma > 0 and is rejected for
// sigma < 0 unless the input is mean-free; sigma = 0 is the identity.
ScalarField2D fractional_laplacian(const ScalarField2D& f, double sigma);
Spectrum2D fractional_laplacian(const Spectrum2D& s, double sigma);

// Riesz transform R_axis = d_axis (-Laplace)^{-1/2}, multiplier i k_axis/|k|.
// The zero mode is annihilated by convention.
ScalarField2D riesz_transform(const ScalarField2D& f, int axis);

// Spectral partial derivative along axis (1 or 2).
ScalarField2D derivative(const ScalarField2D& f, int axis);
Spectrum2D derivative(const Spectrum2D& s, int axis);

// div u and curl u = d1 u2 - d2 u1, both spectral.
ScalarField2D divergence(const VectorField2D& u);
ScalarField2D curl(const VectorField2D& u);

// u = -perp-grad (-Laplace)^{-1+beta/2} theta, i.e. u1 = S_{beta,2} theta,
// u2 = -S_{beta,1} theta with S_{beta,k} = i k_k |k|^{beta-2}.
VectorField2D velocity_from_theta(const ScalarField2D& theta, double beta);
VectorField2D velocity_from_theta(const Spectrum2D& theta, double beta);

// Left inverse of velocity_from_theta: theta = (-Laplace)^{(1-beta)/2}(R1 u2 - R2 u1).
ScalarField2D theta_from_velocity(const VectorField2D& u, double beta);

// curl^{-1} = -perp-grad (-Laplace)^{-1} on mean-free input.
VectorField2D curl_inverse(const ScalarField2D& omega);

// Two-thirds rule: zero all coefficients with max(|k1|,|k2|) > n/3. Idempotent.
Spectrum2D dealias(const Spectrum2D& s);
ScalarField2D dealias(const ScalarField2D& f);

// S_{beta,axis} theta as spectral operator (component building block).
ScalarField2D s_beta(const ScalarField2D& theta, double beta, int axis);

// Free-space principal-value quadrature of the S_{beta,axis} kernel
//   integral of (x_axis - y_axis)/|x-y|^{2-beta} theta(y) dy
// over the numerical support of theta (midpoint rule, no periodic images,
// unit constant). Only the sign/shape is comparable with the spectral
// operator; used as an existence cross-check. The evaluation point must be
// at least 2*dx away from the support.
double pv_kernel_eval(const ScalarField2D& theta, const Point2& x, double beta, int axis);

}  // namespace gsqg
