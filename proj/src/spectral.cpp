#include "gsqg/spectral.hpp"

#include <cmath>

namespace gsqg {

void require_mean_zero(const ScalarField2D& f, const char* who) {
  const double m = mean(f);
  if (std::abs(m) > kMeanTol * std::max(rms(f), 1e-300))
    fail(Errc::NonZeroMean, std::string(who) + " requires a mean-free field");
}

void require_mean_zero(const VectorField2D& u, const char* who) {
  ScalarField2D c1{u.grid};
  c1.values = u.u1;
  require_mean_zero(c1, who);
  c1.values = u.u2;
  require_mean_zero(c1, who);
}

Spectrum2D apply_multiplier(const Spectrum2D& s, const Multiplier& m) {
  Spectrum2D out(s.grid);
  const int n = s.grid.n;
  const double ks = s.grid.k_scale();
  for (int a1 = 0; a1 < n; ++a1) {
    const double k1 = ks * s.grid.wavenumber(a1);
    for (int a2 = 0; a2 < n; ++a2) {
      const double k2 = ks * s.grid.wavenumber(a2);
      const std::size_t idx = static_cast<std::size_t>(a1) * n + a2;
      out.coeffs[idx] = m(k1, k2) * s.coeffs[idx];
    }
  }
  return out;
}

Spectrum2D fractional_laplacian(const Spectrum2D& s, double sigma) {
  Spectrum2D out = apply_multiplier(s, [sigma](double k1, double k2) {
    const double k2sum = k1 * k1 + k2 * k2;
    if (k2sum == 0.0) return std::complex<double>(sigma == 0.0 ? 1.0 : 0.0, 0.0);
    return std::complex<double>(std::pow(k2sum, sigma), 0.0);
  });
  return out;
}

ScalarField2D fractional_laplacian(const ScalarField2D& f, double sigma) {
  if (sigma < 0.0) require_mean_zero(f, "fractional_laplacian with sigma < 0");
  return to_field(fractional_laplacian(to_spectrum(f), sigma));
}

ScalarField2D riesz_transform(const ScalarField2D& f, int axis) {
  if (axis != 1 && axis != 2) fail(Errc::InvalidArgument, "axis must be 1 or 2");
  Spectrum2D s = to_spectrum(f);
  Spectrum2D out = apply_multiplier(s, [axis](double k1, double k2) {
    const double kn = std::hypot(k1, k2);
    if (kn == 0.0) return std::complex<double>(0.0, 0.0);
    return std::complex<double>(0.0, (axis == 1 ? k1 : k2) / kn);
  });
  return to_field(out);
}

Spectrum2D derivative(const Spectrum2D& s, int axis) {
  if (axis != 1 && axis != 2) fail(Errc::InvalidArgument, "axis must be 1 or 2");
  return apply_multiplier(s, [axis](double k1, double k2) {
    return std::complex<double>(0.0, axis == 1 ? k1 : k2);
  });
}

ScalarField2D derivative(const ScalarField2D& f, int axis) {
  return to_field(derivative(to_spectrum(f), axis));
}

ScalarField2D divergence(const VectorField2D& u) {
  ScalarField2D c{u.grid};
  c.values = u.u1;
  ScalarField2D d1 = derivative(c, 1);
  c.values = u.u2;
  ScalarField2D d2 = derivative(c, 2);
  for (std::size_t i = 0; i < d1.values.size(); ++i) d1.values[i] += d2.values[i];
  return d1;
}

ScalarField2D curl(const VectorField2D& u) {
  ScalarField2D c{u.grid};
  c.values = u.u2;
  ScalarField2D d1u2 = derivative(c, 1);
  c.values = u.u1;
  ScalarField2D d2u1 = derivative(c, 2);
  for (std::size_t i = 0; i < d1u2.values.size(); ++i) d1u2.values[i] -= d2u1.values[i];
  return d1u2;
}

VectorField2D velocity_from_theta(const Spectrum2D& theta, double beta) {
  const int n = theta.grid.n;
  const double ks = theta.grid.k_scale();
  Spectrum2D s1(theta.grid), s2(theta.grid);
  for (int a1 = 0; a1 < n; ++a1) {
    const double k1 = ks * theta.grid.wavenumber(a1);
    for (int a2 = 0; a2 < n; ++a2) {
      const double k2 = ks * theta.grid.wavenumber(a2);
      const std::size_t idx = static_cast<std::size_t>(a1) * n + a2;
      const double kk = k1 * k1 + k2 * k2;
      if (kk == 0.0) {
        s1.coeffs[idx] = s2.coeffs[idx] = 0.0;
        continue;
      }
      // u1 = S_{b,2} theta, u2 = -S_{b,1} theta, S_{b,k} = i k_k |k|^{beta-2}
      const double w = std::pow(kk, 0.5 * beta - 1.0);
      const std::complex<double> th = theta.coeffs[idx];
      s1.coeffs[idx] = std::complex<double>(0.0, k2 * w) * th;
      s2.coeffs[idx] = std::complex<double>(0.0, -k1 * w) * th;
    }
  }
  VectorField2D u(theta.grid);
  u.u1 = to_field(s1).values;
  u.u2 = to_field(s2).values;
  return u;
}

VectorField2D velocity_from_theta(const ScalarField2D& theta, double beta) {
  require_mean_zero(theta, "velocity_from_theta");
  return velocity_from_theta(to_spectrum(theta), beta);
}

ScalarField2D theta_from_velocity(const VectorField2D& u, double beta) {
  require_mean_zero(u, "theta_from_velocity");
  ScalarField2D c{u.grid};
  c.values = u.u1;
  Spectrum2D s1 = to_spectrum(c);
  c.values = u.u2;
  Spectrum2D s2 = to_spectrum(c);
  const int n = u.grid.n;
  const double ks = u.grid.k_scale();
  Spectrum2D out(u.grid);
  for (int a1 = 0; a1 < n; ++a1) {
    const double k1 = ks * u.grid.wavenumber(a1);
    for (int a2 = 0; a2 < n; ++a2) {
      const double k2 = ks * u.grid.wavenumber(a2);
      const std::size_t idx = static_cast<std::size_t>(a1) * n + a2;
      const double kk = k1 * k1 + k2 * k2;
      if (kk == 0.0) {
        out.coeffs[idx] = 0.0;
        continue;
      }
      // theta = (-Lap)^{(1-beta)/2} (R1 u2 - R2 u1) = i |k|^{-beta} (k1 u2 - k2 u1)
      const double w = std::pow(kk, -0.5 * beta);
      out.coeffs[idx] = std::complex<double>(0.0, w) *
                        (k1 * s2.coeffs[idx] - k2 * s1.coeffs[idx]);
    }
  }
  return to_field(out);
}

VectorField2D curl_inverse(const ScalarField2D& omega) {
  require_mean_zero(omega, "curl_inverse");
  // curl^{-1} = -perp-grad (-Lap)^{-1} coincides with the beta = 0 velocity law.
  return velocity_from_theta(to_spectrum(omega), 0.0);
}

Spectrum2D dealias(const Spectrum2D& s) {
  Spectrum2D out = s;
  const int n = s.grid.n;
  const int kmax = n / 3;
  for (int a1 = 0; a1 < n; ++a1) {
    const int k1 = std::abs(s.grid.wavenumber(a1));
    for (int a2 = 0; a2 < n; ++a2) {
      const int k2 = std::abs(s.grid.wavenumber(a2));
      if (std::max(k1, k2) > kmax)
        out.coeffs[static_cast<std::size_t>(a1) * n + a2] = 0.0;
    }
  }
  return out;
}

ScalarField2D dealias(const ScalarField2D& f) { return to_field(dealias(to_spectrum(f))); }

ScalarField2D s_beta(const ScalarField2D& theta, double beta, int axis) {
  if (axis != 1 && axis != 2) fail(Errc::InvalidArgument, "axis must be 1 or 2");
  Spectrum2D s = to_spectrum(theta);
  Spectrum2D out = apply_multiplier(s, [beta, axis](double k1, double k2) {
    const double kk = k1 * k1 + k2 * k2;
    if (kk == 0.0) return std::complex<double>(0.0, 0.0);
    const double w = std::pow(kk, 0.5 * beta - 1.0);
    return std::complex<double>(0.0, (axis == 1 ? k1 : k2) * w);
  });
  return to_field(out);
}

double pv_kernel_eval(const ScalarField2D& theta, const Point2& x, double beta, int axis) {
  if (axis != 1 && axis != 2) fail(Errc::InvalidArgument, "axis must be 1 or 2");
  const int n = theta.grid.n;
  const double dx = theta.grid.dx();
  const double thresh = 1e-14 * max_abs(theta);
  const double cell = dx * dx;

  double acc = 0.0;
  double min_dist = 1e300;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      const double v = theta.at(i, j);
      if (std::abs(v) <= thresh) continue;
      const double y1 = i * dx, y2 = j * dx;
      const double d1 = x[0] - y1, d2 = x[1] - y2;
      const double r = std::hypot(d1, d2);
      min_dist = std::min(min_dist, r);
      const double kern = (axis == 1 ? d1 : d2) / std::pow(r, 2.0 - beta);
      acc += kern * v * cell;
    }
  }
  if (min_dist < 2.0 * dx)
    fail(Errc::PointInsideSupport, "evaluation point closer than 2*dx to the support");
  return acc;
}

}  // namespace gsqg
