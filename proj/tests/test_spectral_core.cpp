#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "gsqg/fft.hpp"
#include "gsqg/spectral.hpp"
#include "test_helpers.hpp"

using namespace gsqg;
using namespace testutil;

TEST_CASE("to_spectrum: Fourier identities") {
  const Grid2D g = Grid2D::make(32);
  Spectrum2D s = to_spectrum(sin_x1(g));

  // sin x1 = (e^{ix1} - e^{-ix1}) / 2i: coeff at (1,0) is -i/2, at (-1,0) is i/2.
  const auto at = [&](int k1, int k2) {
    const int a1 = (k1 + g.n) % g.n;
    const int a2 = (k2 + g.n) % g.n;
    return s.coeffs[static_cast<std::size_t>(a1) * g.n + a2];
  };
  CHECK(std::abs(at(1, 0) - std::complex<double>(0.0, -0.5)) < 1e-14);
  CHECK(std::abs(at(-1, 0) - std::complex<double>(0.0, 0.5)) < 1e-14);
  double rest = 0.0;
  for (int a1 = 0; a1 < g.n; ++a1)
    for (int a2 = 0; a2 < g.n; ++a2) {
      if (a2 == 0 && (a1 == 1 || a1 == g.n - 1)) continue;
      rest = std::max(rest, std::abs(s.coeffs[static_cast<std::size_t>(a1) * g.n + a2]));
    }
  CHECK(rest < 1e-14);

  ScalarField2D c(g, 3.25);
  Spectrum2D sc = to_spectrum(c);
  CHECK(std::abs(sc.coeffs[0] - 3.25) < 1e-14);
}

TEST_CASE("to_spectrum roundtrip on random data") {
  const Grid2D g = Grid2D::make(64);
  ScalarField2D f = random_band_limited(g, 9, 42);
  ScalarField2D back = to_field(to_spectrum(f));
  CHECK(max_err(f, back) < 1e-13 * max_abs(f));
}

TEST_CASE("fractional_laplacian eigenfunctions and zero-mode contract") {
  const Grid2D g = Grid2D::make(32);
  ScalarField2D f = sin_x1(g);
  for (double sigma : {-0.7, -0.5, 0.25, 1.0}) {
    ScalarField2D out = fractional_laplacian(f, sigma);
    CHECK(max_err(out, f) < 1e-12);  // |k| = 1
  }
  ScalarField2D tg = taylor_green(g);
  for (double sigma : {0.5, 1.0, -1.0}) {
    ScalarField2D out = fractional_laplacian(tg, sigma);
    ScalarField2D expect = tg;
    for (double& v : expect.values) v *= std::pow(2.0, sigma);
    CHECK(max_err(out, expect) < 1e-12);
  }

  ScalarField2D shifted = sin_x1(g);
  for (double& v : shifted.values) v += 1.0;
  CHECK_THROWS_AS(fractional_laplacian(shifted, -1.0), Error);
  try {
    fractional_laplacian(shifted, -1.0);
  } catch (const Error& e) {
    CHECK(e.code() == Errc::NonZeroMean);
  }
}

TEST_CASE("riesz transforms") {
  const Grid2D g = Grid2D::make(32);
  ScalarField2D f = sin_x1(g);

  ScalarField2D r1 = riesz_transform(f, 1);
  ScalarField2D cosx = sampled(g, [](double x, double) { return std::cos(x); });
  CHECK(max_err(r1, cosx) < 1e-12);

  ScalarField2D r2 = riesz_transform(f, 2);
  CHECK(max_abs(r2) < 1e-13);

  ScalarField2D rnd = random_band_limited(g, 7, 3);
  ScalarField2D rr = riesz_transform(riesz_transform(rnd, 1), 1);
  ScalarField2D r22 = riesz_transform(riesz_transform(rnd, 2), 2);
  ScalarField2D neg = rnd;
  for (double& v : neg.values) v = -v;
  ScalarField2D sum = rr;
  for (std::size_t i = 0; i < sum.values.size(); ++i) sum.values[i] += r22.values[i];
  CHECK(max_err(sum, neg) < 1e-12 * max_abs(rnd));
}

TEST_CASE("velocity_from_theta: eigenfunction forms and divergence") {
  const Grid2D g = Grid2D::make(64);
  ScalarField2D tg = taylor_green(g);

  SUBCASE("beta = 0 closed form") {
    VectorField2D u = velocity_from_theta(tg, 0.0);
    VectorField2D expect(g);
    const double dx = g.dx();
    for (int i = 0; i < g.n; ++i)
      for (int j = 0; j < g.n; ++j) {
        const std::size_t idx = static_cast<std::size_t>(i) * g.n + j;
        expect.u1[idx] = 0.5 * std::sin(i * dx) * std::cos(j * dx);
        expect.u2[idx] = -0.5 * std::cos(i * dx) * std::sin(j * dx);
      }
    CHECK(max_err(u, expect) < 1e-13);
  }

  SUBCASE("general beta eigenfunction scaling") {
    for (double beta : {0.3, 0.5, 1.0}) {
      VectorField2D u = velocity_from_theta(tg, beta);
      const double c = std::pow(2.0, 0.5 * beta - 1.0);
      VectorField2D expect(g);
      const double dx = g.dx();
      for (int i = 0; i < g.n; ++i)
        for (int j = 0; j < g.n; ++j) {
          const std::size_t idx = static_cast<std::size_t>(i) * g.n + j;
          expect.u1[idx] = c * std::sin(i * dx) * std::cos(j * dx);
          expect.u2[idx] = -c * std::cos(i * dx) * std::sin(j * dx);
        }
      CHECK(max_err(u, expect) < 1e-13);
    }
  }

  SUBCASE("divergence-free on random mean-zero data") {
    ScalarField2D rnd = random_band_limited(g, 9, 11);
    for (double beta : {0.0, 0.5, 1.0}) {
      VectorField2D u = velocity_from_theta(rnd, beta);
      CHECK(max_abs(divergence(u)) <= 1e-12 * max_abs(u));
    }
  }

  SUBCASE("mean precondition") {
    ScalarField2D bad = taylor_green(g);
    for (double& v : bad.values) v += 0.1;
    CHECK_THROWS_AS(velocity_from_theta(bad, 0.5), Error);
  }
}

TEST_CASE("theta_from_velocity is a left inverse") {
  const Grid2D g = Grid2D::make(64);
  SUBCASE("taylor-green roundtrip") {
    ScalarField2D tg = taylor_green(g);
    for (double beta : {0.0, 0.37, 1.0}) {
      ScalarField2D back = theta_from_velocity(velocity_from_theta(tg, beta), beta);
      CHECK(max_err(back, tg) < 1e-12);
    }
  }
  SUBCASE("zero maps to zero") {
    VectorField2D z(g);
    CHECK(max_abs(theta_from_velocity(z, 0.5)) == 0.0);
  }
  SUBCASE("random roundtrip") {
    ScalarField2D rnd = random_band_limited(g, 9, 5);
    for (double beta : {0.0, 0.37, 1.0}) {
      ScalarField2D back = theta_from_velocity(velocity_from_theta(rnd, beta), beta);
      CHECK(max_err(back, rnd) <= 1e-12 * max_abs(rnd));
    }
  }
}

TEST_CASE("curl_inverse") {
  const Grid2D g = Grid2D::make(64);
  ScalarField2D tg = taylor_green(g);
  VectorField2D v = curl_inverse(tg);
  ScalarField2D back = curl(v);
  CHECK(max_err(back, tg) < 1e-12);

  VectorField2D z = curl_inverse(ScalarField2D(g));
  CHECK(max_abs(z) == 0.0);

  ScalarField2D rnd = random_band_limited(g, 9, 17);
  CHECK(max_err(curl(curl_inverse(rnd)), rnd) <= 1e-12 * max_abs(rnd));
}

TEST_CASE("dealias: projection with the two-thirds rule") {
  const Grid2D g = Grid2D::make(32);
  SUBCASE("single low mode unchanged") {
    Spectrum2D s(g);  // exactly one (1,0) mode pair
    s.coeffs[static_cast<std::size_t>(1) * g.n + 0] = {0.0, -0.5};
    s.coeffs[static_cast<std::size_t>(g.n - 1) * g.n + 0] = {0.0, 0.5};
    Spectrum2D d = dealias(s);
    double err = 0.0;
    for (std::size_t i = 0; i < s.coeffs.size(); ++i)
      err = std::max(err, std::abs(s.coeffs[i] - d.coeffs[i]));
    CHECK(err == 0.0);
  }
  SUBCASE("idempotent and energy non-increasing on full-band noise") {
    ScalarField2D noise(g);
    std::mt19937_64 rng(33);
    std::normal_distribution<double> gauss;
    for (double& v : noise.values) v = gauss(rng);
    Spectrum2D s = to_spectrum(noise);
    Spectrum2D d1 = dealias(s);
    Spectrum2D d2 = dealias(d1);
    double diff = 0.0, e_before = 0.0, e_after = 0.0;
    bool killed_high = true;
    for (int a1 = 0; a1 < g.n; ++a1)
      for (int a2 = 0; a2 < g.n; ++a2) {
        const std::size_t i = static_cast<std::size_t>(a1) * g.n + a2;
        diff = std::max(diff, std::abs(d1.coeffs[i] - d2.coeffs[i]));
        e_before += std::norm(s.coeffs[i]);
        e_after += std::norm(d1.coeffs[i]);
        if (std::max(std::abs(g.wavenumber(a1)), std::abs(g.wavenumber(a2))) > g.n / 3 &&
            d1.coeffs[i] != std::complex<double>(0.0, 0.0))
          killed_high = false;
      }
    CHECK(diff == 0.0);
    CHECK(e_after <= e_before);
    CHECK(killed_high);
  }
}

TEST_CASE("operator linearity") {
  const Grid2D g = Grid2D::make(32);
  ScalarField2D f = random_band_limited(g, 5, 7);
  ScalarField2D h = random_band_limited(g, 5, 8);
  const double a = 1.7, b = -0.4;
  ScalarField2D combo(g);
  for (std::size_t i = 0; i < combo.values.size(); ++i)
    combo.values[i] = a * f.values[i] + b * h.values[i];

  auto check_linear = [&](auto&& op) {
    ScalarField2D lhs = op(combo);
    ScalarField2D rf = op(f), rh = op(h);
    ScalarField2D rhs(g);
    for (std::size_t i = 0; i < rhs.values.size(); ++i)
      rhs.values[i] = a * rf.values[i] + b * rh.values[i];
    const double scale = std::max(max_abs(lhs), 1e-30);
    CHECK(max_err(lhs, rhs) <= 1e-12 * scale);
  };
  check_linear([](const ScalarField2D& x) { return fractional_laplacian(x, 0.75); });
  check_linear([](const ScalarField2D& x) { return riesz_transform(x, 1); });
  check_linear([](const ScalarField2D& x) { return derivative(x, 2); });
  check_linear([](const ScalarField2D& x) { return theta_from_velocity(velocity_from_theta(x, 0.6), 0.3); });
}

TEST_CASE("multiplier exactness on pure modes") {
  const Grid2D g = Grid2D::make(48);
  const double dx = g.dx();
  // op(cos(k.x + phase)) = re(m) cos - im(m) sin for every multiplier m(k).
  auto mode_field = [&](int k1, int k2, double phase) {
    return sampled(g, [=](double x, double y) { return std::cos(k1 * x + k2 * y + phase); });
  };
  auto expected = [&](int k1, int k2, double phase, std::complex<double> m) {
    return sampled(g, [=](double x, double y) {
      const double arg = k1 * x + k2 * y + phase;
      return m.real() * std::cos(arg) - m.imag() * std::sin(arg);
    });
  };
  (void)dx;

  struct Op {
    const char* name;
    std::function<ScalarField2D(const ScalarField2D&)> apply;
    std::function<std::complex<double>(double, double)> symbol;
  };
  const double beta = 0.6;
  std::vector<Op> ops = {
      {"lap^0.4", [](const ScalarField2D& f) { return fractional_laplacian(f, 0.4); },
       [](double k1, double k2) {
         return std::complex<double>(std::pow(k1 * k1 + k2 * k2, 0.4), 0.0);
       }},
      {"R1", [](const ScalarField2D& f) { return riesz_transform(f, 1); },
       [](double k1, double k2) {
         return std::complex<double>(0.0, k1 / std::hypot(k1, k2));
       }},
      {"d2", [](const ScalarField2D& f) { return derivative(f, 2); },
       [](double, double k2) { return std::complex<double>(0.0, k2); }},
      {"S_beta_1", [beta](const ScalarField2D& f) { return s_beta(f, beta, 1); },
       [beta](double k1, double k2) {
         const double kk = k1 * k1 + k2 * k2;
         return std::complex<double>(0.0, k1 * std::pow(kk, 0.5 * beta - 1.0));
       }},
  };

  for (const Op& op : ops) {
    for (auto [k1, k2] : {std::pair{1, 0}, {0, 2}, {3, -2}, {-4, 5}, {7, 7}}) {
      for (double phase : {0.0, 0.9}) {
        ScalarField2D in = mode_field(k1, k2, phase);
        ScalarField2D out = op.apply(in);
        ScalarField2D want = expected(k1, k2, phase, op.symbol(k1, k2));
        CHECK_MESSAGE(max_err(out, want) < 1e-12,
                      op.name << " at k = (" << k1 << "," << k2 << ")");
      }
    }
  }
}

TEST_CASE("pv_kernel_eval against a fine-grid quadrature oracle") {
  const Grid2D g = Grid2D::make(128);
  const double radius = 0.4;
  const Point2 center{2.0, two_pi / 2.0};
  ScalarField2D theta = sampled(g, [&](double x, double y) {
    return bump(std::hypot(x - center[0], y - center[1]), radius);
  });
  const Point2 x{3.2, two_pi / 2.0};  // strictly right of the bump along axis 1

  for (double beta : {0.0, 0.5, 1.0}) {
    const double got = pv_kernel_eval(theta, x, beta, 1);

    // Independent quadrature: analytic bump on a 4x finer local grid.
    const int m = 512;
    const double h = 2.0 * radius / m;
    double oracle = 0.0;
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < m; ++j) {
        const double y1 = center[0] - radius + (i + 0.5) * h;
        const double y2 = center[1] - radius + (j + 0.5) * h;
        const double v = bump(std::hypot(y1 - center[0], y2 - center[1]), radius);
        if (v == 0.0) continue;
        const double d1 = x[0] - y1, d2 = x[1] - y2;
        oracle += v * d1 / std::pow(std::hypot(d1, d2), 2.0 - beta) * h * h;
      }
    CHECK(oracle > 0.0);  // positive bump strictly left: kernel sign (x1 - y1) > 0
    CHECK(got > 0.0);
    CHECK(std::abs(got - oracle) < 0.02 * std::abs(oracle));
  }
}

TEST_CASE("pv_kernel_eval edge cases") {
  const Grid2D g = Grid2D::make(64);
  SUBCASE("zero field gives zero") {
    ScalarField2D z(g);
    CHECK(pv_kernel_eval(z, {1.0, 1.0}, 0.5, 1) == 0.0);
  }
  SUBCASE("odd-kernel symmetry across the orthogonal axis") {
    const Point2 center{two_pi / 2.0, two_pi / 2.0};
    ScalarField2D theta = sampled(g, [&](double x, double y) {
      return bump(std::hypot(x - center[0], y - center[1]), 0.5);
    });
    // x on the axis-2 line through the bump: kernel odd in (x1 - y1).
    const double v = pv_kernel_eval(theta, {center[0], center[1] + 1.5}, 0.5, 1);
    CHECK(std::abs(v) < 1e-10);
  }
  SUBCASE("evaluation inside the support is rejected") {
    const Point2 center{two_pi / 2.0, two_pi / 2.0};
    ScalarField2D theta = sampled(g, [&](double x, double y) {
      return bump(std::hypot(x - center[0], y - center[1]), 0.5);
    });
    CHECK_THROWS_AS(pv_kernel_eval(theta, {center[0] + 0.5, center[1]}, 0.5, 1), Error);
  }
}
