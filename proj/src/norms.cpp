#include "gsqg/norms.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "gsqg/fft.hpp"
#include "gsqg/spectral.hpp"

namespace gsqg {

double sobolev_norm(const Spectrum2D& f, double s, bool homogeneous) {
  const int n = f.grid.n;
  const double ks = f.grid.k_scale();
  double acc = 0.0;
  for (int a1 = 0; a1 < n; ++a1) {
    const double k1 = ks * f.grid.wavenumber(a1);
    for (int a2 = 0; a2 < n; ++a2) {
      const double k2 = ks * f.grid.wavenumber(a2);
      const double kk = k1 * k1 + k2 * k2;
      const std::size_t idx = static_cast<std::size_t>(a1) * n + a2;
      if (homogeneous) {
        if (kk == 0.0) continue;
        acc += std::pow(kk, s) * std::norm(f.coeffs[idx]);
      } else {
        acc += std::pow(1.0 + kk, s) * std::norm(f.coeffs[idx]);
      }
    }
  }
  return std::sqrt(acc);
}

double sobolev_norm(const ScalarField2D& f, double s, bool homogeneous) {
  return sobolev_norm(to_spectrum(f), s, homogeneous);
}

double sobolev_norm(const VectorField2D& u, double s, bool homogeneous) {
  ScalarField2D c{u.grid};
  c.values = u.u1;
  const double n1 = sobolev_norm(c, s, homogeneous);
  c.values = u.u2;
  const double n2 = sobolev_norm(c, s, homogeneous);
  return std::hypot(n1, n2);
}

double l2_norm(const ScalarField2D& f) { return rms(f); }

namespace {

// Stream function of a divergence-free field: phi_hat = (i k2 v1 - i k1 v2)/|k|^2.
Spectrum2D stream_function(const VectorField2D& v) {
  ScalarField2D c{v.grid};
  c.values = v.u1;
  Spectrum2D s1 = to_spectrum(c);
  c.values = v.u2;
  Spectrum2D s2 = to_spectrum(c);
  Spectrum2D phi(v.grid);
  const int n = v.grid.n;
  const double ks = v.grid.k_scale();
  for (int a1 = 0; a1 < n; ++a1) {
    const double k1 = ks * v.grid.wavenumber(a1);
    for (int a2 = 0; a2 < n; ++a2) {
      const double k2 = ks * v.grid.wavenumber(a2);
      const double kk = k1 * k1 + k2 * k2;
      const std::size_t idx = static_cast<std::size_t>(a1) * n + a2;
      if (kk == 0.0) {
        phi.coeffs[idx] = 0.0;
        continue;
      }
      phi.coeffs[idx] = (std::complex<double>(0.0, k2) * s1.coeffs[idx] -
                         std::complex<double>(0.0, k1) * s2.coeffs[idx]) /
                        kk;
    }
  }
  return phi;
}

void require_divergence_free(const VectorField2D& v, const char* who) {
  const double dmax = max_abs(divergence(v));
  const double scale = max_abs(v);
  if (dmax > 1e-8 * std::max(scale, 1e-300))
    fail(Errc::NotDivergenceFree, std::string(who) + ": |div| exceeds 1e-8 of the sup norm");
}

}  // namespace

double beta_inner_product(const VectorField2D& v, const VectorField2D& w, double beta) {
  require_mean_zero(v, "beta_inner_product");
  require_mean_zero(w, "beta_inner_product");
  require_divergence_free(v, "beta_inner_product");
  require_divergence_free(w, "beta_inner_product");
  const Spectrum2D pv = stream_function(v);
  const Spectrum2D pw = stream_function(w);
  const int n = v.grid.n;
  const double ks = v.grid.k_scale();
  double acc = 0.0;
  for (int a1 = 0; a1 < n; ++a1) {
    const double k1 = ks * v.grid.wavenumber(a1);
    for (int a2 = 0; a2 < n; ++a2) {
      const double k2 = ks * v.grid.wavenumber(a2);
      const double kk = k1 * k1 + k2 * k2;
      if (kk == 0.0) continue;
      const std::size_t idx = static_cast<std::size_t>(a1) * n + a2;
      acc += std::pow(kk, 1.0 - 0.5 * beta) *
             (pv.coeffs[idx] * std::conj(pw.coeffs[idx])).real();
    }
  }
  return acc;
}

double hamiltonian(const ScalarField2D& theta, double beta) {
  require_mean_zero(theta, "hamiltonian");
  const Spectrum2D s = to_spectrum(theta);
  const int n = theta.grid.n;
  const double ks = theta.grid.k_scale();
  double acc = 0.0;
  for (int a1 = 0; a1 < n; ++a1) {
    const double k1 = ks * theta.grid.wavenumber(a1);
    for (int a2 = 0; a2 < n; ++a2) {
      const double k2 = ks * theta.grid.wavenumber(a2);
      const double kk = k1 * k1 + k2 * k2;
      if (kk == 0.0) continue;
      const std::size_t idx = static_cast<std::size_t>(a1) * n + a2;
      acc += std::pow(kk, 0.5 * beta - 1.0) * std::norm(s.coeffs[idx]);
    }
  }
  return 0.5 * acc;
}

double holder_seminorm(const ScalarField2D& f, double alpha, const SamplingPlan& plan) {
  if (!(alpha > 0.0 && alpha < 1.0)) fail(Errc::InvalidArgument, "alpha must be in (0,1)");
  const int n = f.grid.n;
  const double dx = f.grid.dx();
  const double L = f.grid.length;

  double sup = 0.0;
  auto consider = [&](int i1, int j1, int i2, int j2) {
    if (i1 == i2 && j1 == j2) return;
    const Point2 a{i1 * dx, j1 * dx}, b{i2 * dx, j2 * dx};
    const double d = periodic_distance(a, b, L);
    const double q = std::abs(f.at(i1, j1) - f.at(i2, j2)) / std::pow(d, alpha);
    sup = std::max(sup, q);
  };

  // Exhaustive pairs among grid points within `window` of each focus point.
  for (const Point2& fp : plan.focus_points) {
    std::vector<std::pair<int, int>> pts;
    const int reach = static_cast<int>(std::ceil(plan.window / dx)) + 1;
    const int ci = static_cast<int>(std::round(fp[0] / dx));
    const int cj = static_cast<int>(std::round(fp[1] / dx));
    for (int di = -reach; di <= reach; ++di) {
      for (int dj = -reach; dj <= reach; ++dj) {
        const int i = ((ci + di) % n + n) % n;
        const int j = ((cj + dj) % n + n) % n;
        const Point2 p{i * dx, j * dx};
        if (periodic_distance(p, fp, L) <= plan.window) pts.emplace_back(i, j);
      }
    }
    for (std::size_t a = 0; a < pts.size(); ++a)
      for (std::size_t b = a + 1; b < pts.size(); ++b)
        consider(pts[a].first, pts[a].second, pts[b].first, pts[b].second);
  }

  std::mt19937_64 rng(plan.seed);
  std::uniform_int_distribution<int> pick(0, n - 1);
  for (std::size_t k = 0; k < plan.n_random; ++k) {
    consider(pick(rng), pick(rng), pick(rng), pick(rng));
  }
  return sup;
}

std::vector<std::pair<double, double>> little_holder_profile(const ScalarField2D& f,
                                                             double alpha,
                                                             const Point2& x0) {
  if (!(alpha > 0.0 && alpha < 1.0)) fail(Errc::InvalidArgument, "alpha must be in (0,1)");
  const int n = f.grid.n;
  const double dx = f.grid.dx();
  const double L = f.grid.length;
  const int ci = static_cast<int>(std::round(x0[0] / dx)) % n;
  const int cj = static_cast<int>(std::round(x0[1] / dx)) % n;
  const double f0 = f.at(ci, cj);

  std::vector<double> hs;
  for (double h = dx; h <= L / 4.0; h *= 2.0) hs.push_back(h);
  std::reverse(hs.begin(), hs.end());

  std::vector<std::pair<double, double>> profile;
  for (double h : hs) {
    const int reach = static_cast<int>(std::ceil(h / dx)) + 1;
    double omega = 0.0;
    for (int di = -reach; di <= reach; ++di) {
      for (int dj = -reach; dj <= reach; ++dj) {
        if (di == 0 && dj == 0) continue;
        const int i = ((ci + di) % n + n) % n;
        const int j = ((cj + dj) % n + n) % n;
        const Point2 p{i * dx, j * dx};
        const Point2 c{ci * dx, cj * dx};
        if (periodic_distance(p, c, L) <= h)
          omega = std::max(omega, std::abs(f.at(i, j) - f0));
      }
    }
    profile.emplace_back(h, omega / std::pow(h, alpha));
  }
  return profile;
}

double disjoint_support_ratio(const ScalarField2D& f, const ScalarField2D& g, double s) {
  if (!(f.grid == g.grid)) fail(Errc::InvalidArgument, "fields must share a grid");
  const double tf = 1e-14 * max_abs(f);
  const double tg = 1e-14 * max_abs(g);
  for (std::size_t i = 0; i < f.values.size(); ++i) {
    if (std::abs(f.values[i]) > tf && std::abs(g.values[i]) > tg)
      fail(Errc::OverlappingSupports, "numerical supports intersect");
  }
  ScalarField2D sum{f.grid};
  sum.values.resize(f.values.size());
  for (std::size_t i = 0; i < f.values.size(); ++i)
    sum.values[i] = f.values[i] + g.values[i];
  const double nf = sobolev_norm(f, s, false);
  const double ng = sobolev_norm(g, s, false);
  const double nsum = sobolev_norm(sum, s, false);
  return nsum * nsum / (nf * nf + ng * ng);
}

double BumpProfile::operator()(double r) const {
  const double q = r / radius;
  if (q >= 1.0) return 0.0;
  return amplitude * std::exp(1.0 - 1.0 / (1.0 - q * q));
}

namespace {

double homogeneous_energy_1d(const std::vector<double>& values, double s, double length) {
  auto coeffs = dft_1d(values);
  const int n = static_cast<int>(values.size());
  const double ks = two_pi / length;
  double acc = 0.0;
  for (int a = 0; a < n; ++a) {
    const int k = a <= n / 2 ? a : a - n;
    if (k == 0) continue;
    acc += std::pow(std::abs(ks * k), 2.0 * s) * std::norm(coeffs[a]);
  }
  return acc;
}

double homogeneous_energy_2d(const ScalarField2D& f, double s) {
  const double v = sobolev_norm(f, s, true);
  return v * v;
}

}  // namespace

double scaling_ratio(const BumpProfile& f, double lambda, double s, int d, int n) {
  if (lambda != 1.0 && lambda != 2.0 && lambda != 4.0)
    fail(Errc::NonDyadic, "lambda must be one of {1, 2, 4}");
  if (d != 1 && d != 2) fail(Errc::InvalidArgument, "d must be 1 or 2");
  if (lambda == 1.0) return 1.0;

  // Auxiliary torus much larger than the scaled support: the wavenumber
  // spacing 2 pi / L controls how well the lattice sum resolves the |k|^{2s}
  // kink at the origin, which dominates the deviation from the exact ratio.
  const double L = 4.0 * two_pi;
  const double exact = std::pow(lambda, static_cast<double>(d) - 2.0 * s);

  if (d == 1) {
    const double dx = L / n;
    std::vector<double> base(n), scaled(n);
    for (int i = 0; i < n; ++i) {
      const double x = i * dx - L / 2.0;
      base[i] = f(std::abs(x));
      scaled[i] = f(std::abs(x) / lambda);
    }
    const double e0 = homogeneous_energy_1d(base, s, L);
    const double e1 = homogeneous_energy_1d(scaled, s, L);
    return (e1 / e0) / exact;
  }

  const Grid2D g = Grid2D::make(n, L);
  ScalarField2D base(g), scaled(g);
  const double dx = g.dx();
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      const double x = i * dx - L / 2.0;
      const double y = j * dx - L / 2.0;
      const double r = std::hypot(x, y);
      base.at(i, j) = f(r);
      scaled.at(i, j) = f(r / lambda);
    }
  }
  const double e0 = homogeneous_energy_2d(base, s);
  const double e1 = homogeneous_energy_2d(scaled, s);
  return (e1 / e0) / exact;
}

}  // namespace gsqg
