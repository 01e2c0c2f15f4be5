#include "gsqg/interp.hpp"

#include <cmath>

#include "gsqg/fft.hpp"

namespace gsqg {

namespace {

// Cubic B-spline weights for fractional offset u in [0,1), stencil {-1,0,1,2}.
inline void bspline_weights(double u, double w[4]) {
  const double u2 = u * u, u3 = u2 * u;
  w[0] = (1.0 - 3.0 * u + 3.0 * u2 - u3) / 6.0;
  w[1] = (4.0 - 6.0 * u2 + 3.0 * u3) / 6.0;
  w[2] = (1.0 + 3.0 * u + 3.0 * u2 - 3.0 * u3) / 6.0;
  w[3] = u3 / 6.0;
}

}  // namespace

BicubicInterpolant::BicubicInterpolant(const ScalarField2D& f) : grid_(f.grid) {
  // Interpolation prefilter: divide the DFT by the sampled B-spline symbol
  // (2/3 + cos(2 pi k / n)/3) per axis; exact on the periodic grid.
  Spectrum2D s = to_spectrum(f);
  const int n = grid_.n;
  std::vector<double> symbol(n);
  for (int a = 0; a < n; ++a) {
    const double w = two_pi * grid_.wavenumber(a) / n;
    symbol[a] = (2.0 + std::cos(w)) / 3.0;
  }
  for (int a1 = 0; a1 < n; ++a1)
    for (int a2 = 0; a2 < n; ++a2)
      s.coeffs[static_cast<std::size_t>(a1) * n + a2] /= symbol[a1] * symbol[a2];
  coeff_ = to_field(s).values;
}

double BicubicInterpolant::operator()(double x1, double x2) const {
  const int n = grid_.n;
  const double inv_dx = n / grid_.length;
  double t1 = x1 * inv_dx, t2 = x2 * inv_dx;
  double f1 = std::floor(t1), f2 = std::floor(t2);
  const double u1 = t1 - f1, u2 = t2 - f2;
  int i0 = static_cast<int>(f1) % n;
  int j0 = static_cast<int>(f2) % n;
  if (i0 < 0) i0 += n;
  if (j0 < 0) j0 += n;

  double w1[4], w2[4];
  bspline_weights(u1, w1);
  bspline_weights(u2, w2);

  int ii[4], jj[4];
  for (int k = 0; k < 4; ++k) {
    ii[k] = (i0 + k - 1 + n) % n;
    jj[k] = (j0 + k - 1 + n) % n;
  }
  double acc = 0.0;
  for (int a = 0; a < 4; ++a) {
    const double* row = coeff_.data() + static_cast<std::size_t>(ii[a]) * n;
    double r = 0.0;
    for (int b = 0; b < 4; ++b) r += w2[b] * row[jj[b]];
    acc += w1[a] * r;
  }
  return acc;
}

TrigInterpolant::TrigInterpolant(const ScalarField2D& f)
    : grid_(f.grid), coeffs_(to_spectrum(f).coeffs) {}

double TrigInterpolant::operator()(double x1, double x2) const {
  const int n = grid_.n;
  const double ks = grid_.k_scale();
  std::vector<std::complex<double>> e1(n), e2(n);
  for (int a = 0; a < n; ++a) {
    const double k = ks * grid_.wavenumber(a);
    e1[a] = std::polar(1.0, k * x1);
    e2[a] = std::polar(1.0, k * x2);
  }
  std::complex<double> acc = 0.0;
  for (int a1 = 0; a1 < n; ++a1) {
    std::complex<double> inner = 0.0;
    const std::complex<double>* row = coeffs_.data() + static_cast<std::size_t>(a1) * n;
    for (int a2 = 0; a2 < n; ++a2) inner += row[a2] * e2[a2];
    acc += e1[a1] * inner;
  }
  return acc.real();
}

ScalarField2D compose(const ScalarField2D& f, const VectorField2D& disp, InterpMode mode) {
  const Grid2D& g = disp.grid;
  ScalarField2D out(g);
  const double dx = g.dx();
  if (mode == InterpMode::Bicubic) {
    BicubicInterpolant interp(f);
    for (int i = 0; i < g.n; ++i)
      for (int j = 0; j < g.n; ++j) {
        const std::size_t idx = static_cast<std::size_t>(i) * g.n + j;
        out.values[idx] = interp(i * dx + disp.u1[idx], j * dx + disp.u2[idx]);
      }
  } else {
    TrigInterpolant interp(f);
    for (int i = 0; i < g.n; ++i)
      for (int j = 0; j < g.n; ++j) {
        const std::size_t idx = static_cast<std::size_t>(i) * g.n + j;
        out.values[idx] = interp(i * dx + disp.u1[idx], j * dx + disp.u2[idx]);
      }
  }
  return out;
}

ScalarField2D compose(const BicubicInterpolant& f, const VectorField2D& disp) {
  const Grid2D& g = disp.grid;
  ScalarField2D out(g);
  const double dx = g.dx();
  for (int i = 0; i < g.n; ++i)
    for (int j = 0; j < g.n; ++j) {
      const std::size_t idx = static_cast<std::size_t>(i) * g.n + j;
      out.values[idx] = f(i * dx + disp.u1[idx], j * dx + disp.u2[idx]);
    }
  return out;
}

VectorField2D compose(const VectorField2D& v, const VectorField2D& disp, InterpMode mode) {
  ScalarField2D c{v.grid};
  VectorField2D out(disp.grid);
  c.values = v.u1;
  out.u1 = compose(c, disp, mode).values;
  c.values = v.u2;
  out.u2 = compose(c, disp, mode).values;
  return out;
}

}  // namespace gsqg
