#pragma once

#include <complex>
#include <vector>

#include "gsqg/grid.hpp"

namespace gsqg {

enum class InterpMode {
  Bicubic,  // periodic cubic B-spline with exact spectral prefilter, O(h^4)
  Trig,     // direct trigonometric evaluation, exact for band-limited fields
};

// Periodic cubic B-spline interpolant. The prefilter divides the DFT by the
// B-spline symbol per axis, so grid values are reproduced exactly.
class BicubicInterpolant {
 public:
  explicit BicubicInterpolant(const ScalarField2D& f);
  double operator()(double x1, double x2) const;
  const Grid2D& grid() const { return grid_; }

 private:
  Grid2D grid_;
  std::vector<double> coeff_;
};

// Direct Fourier-sum evaluation; O(n^2) per point.
class TrigInterpolant {
 public:
  explicit TrigInterpolant(const ScalarField2D& f);
  double operator()(double x1, double x2) const;

 private:
  Grid2D grid_;
  std::vector<std::complex<double>> coeffs_;
};

// f composed with the map x -> x + d(x): result(x_j) = f(x_j + d(x_j)).
// Evaluation points wrap periodically, so displacements of any size are
// well-defined; callers that need an invertible map keep |d|_inf < length/2.
ScalarField2D compose(const ScalarField2D& f, const VectorField2D& disp,
                      InterpMode mode = InterpMode::Bicubic);
VectorField2D compose(const VectorField2D& v, const VectorField2D& disp,
                      InterpMode mode = InterpMode::Bicubic);

// Same, reusing a prebuilt interpolant of f.
ScalarField2D compose(const BicubicInterpolant& f, const VectorField2D& disp);

}  // namespace gsqg
