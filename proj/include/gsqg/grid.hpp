#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <numbers>
#include <vector>

#include "gsqg/errors.hpp"

namespace gsqg {

inline constexpr double two_pi = 2.0 * std::numbers::pi;

// Uniform n-by-n grid on the periodic square [0, length)^2. Row-major
// storage, index (i, j) <-> point (i*dx, j*dx), first index along x1.
struct Grid2D {
  int n = 0;
  double length = two_pi;

  static Grid2D make(int n, double length = two_pi) {
    if (n < 16 || n % 2 != 0) fail(Errc::InvalidArgument, "grid size must be even and >= 16");
    if (!(length > 0.0)) fail(Errc::InvalidArgument, "domain length must be positive");
    return Grid2D{n, length};
  }

  double dx() const { return length / n; }
  std::size_t size() const { return static_cast<std::size_t>(n) * n; }
  // Signed integer wavenumber for storage index a, in {-n/2+1, ..., n/2}.
  int wavenumber(int a) const { return a <= n / 2 ? a : a - n; }
  // Scale turning integer wavenumbers into physical ones (1 when length = 2*pi).
  double k_scale() const { return two_pi / length; }

  bool operator==(const Grid2D&) const = default;
};

struct ScalarField2D {
  Grid2D grid;
  std::vector<double> values;

  ScalarField2D() = default;
  explicit ScalarField2D(const Grid2D& g, double fill = 0.0) : grid(g), values(g.size(), fill) {}

  double& at(int i, int j) { return values[static_cast<std::size_t>(i) * grid.n + j]; }
  double at(int i, int j) const { return values[static_cast<std::size_t>(i) * grid.n + j]; }
};

struct VectorField2D {
  Grid2D grid;
  std::vector<double> u1, u2;

  VectorField2D() = default;
  explicit VectorField2D(const Grid2D& g) : grid(g), u1(g.size(), 0.0), u2(g.size(), 0.0) {}
};

// DFT coefficients with the convention fhat(k) = n^-2 sum_j f(x_j) exp(-i k.x_j),
// so that Parseval reads sum_k |fhat|^2 = mean(f^2). FFTW storage order:
// coeffs[a1*n + a2] holds wavenumber (wavenumber(a1), wavenumber(a2)).
struct Spectrum2D {
  Grid2D grid;
  std::vector<std::complex<double>> coeffs;

  Spectrum2D() = default;
  explicit Spectrum2D(const Grid2D& g) : grid(g), coeffs(g.size()) {}
};

inline double mean(const ScalarField2D& f) {
  double s = 0.0;
  for (double v : f.values) s += v;
  return s / static_cast<double>(f.values.size());
}

inline double rms(const ScalarField2D& f) {
  double s = 0.0;
  for (double v : f.values) s += v * v;
  return std::sqrt(s / static_cast<double>(f.values.size()));
}

inline double max_abs(const ScalarField2D& f) {
  double m = 0.0;
  for (double v : f.values) m = std::max(m, std::abs(v));
  return m;
}

inline double max_abs(const VectorField2D& v) {
  double m = 0.0;
  for (double x : v.u1) m = std::max(m, std::abs(x));
  for (double x : v.u2) m = std::max(m, std::abs(x));
  return m;
}

// Pointwise sup of |(u1, u2)|.
inline double max_speed(const VectorField2D& v) {
  double m = 0.0;
  for (std::size_t i = 0; i < v.u1.size(); ++i)
    m = std::max(m, std::hypot(v.u1[i], v.u2[i]));
  return m;
}

using Point2 = std::array<double, 2>;

// Shortest displacement from a to b on the torus, componentwise in (-L/2, L/2].
inline Point2 periodic_delta(const Point2& a, const Point2& b, double length) {
  Point2 d{b[0] - a[0], b[1] - a[1]};
  for (double& x : d) {
    x = std::remainder(x, length);
  }
  return d;
}

inline double periodic_distance(const Point2& a, const Point2& b, double length) {
  Point2 d = periodic_delta(a, b, length);
  return std::hypot(d[0], d[1]);
}

}  // namespace gsqg
