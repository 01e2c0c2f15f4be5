#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "gsqg/experiments.hpp"
#include "gsqg/norms.hpp"
#include "gsqg/spectral.hpp"
#include "test_helpers.hpp"

using namespace gsqg;
using namespace testutil;

TEST_CASE("mean_free_bump and dipole_bump invariants") {
  const Grid2D g = Grid2D::make(128);
  const Point2 c{2.0, 3.0};
  ScalarField2D f = mean_free_bump(g, c, 0.5, 2.0);
  CHECK(std::abs(mean(f)) < 1e-15 * max_abs(f));
  // support inside B(c, radius)
  const double dx = g.dx();
  for (int i = 0; i < g.n; ++i)
    for (int j = 0; j < g.n; ++j) {
      if (f.at(i, j) != 0.0)
        CHECK(periodic_distance({i * dx, j * dx}, c, g.length) <= 0.5 + 1e-12);
    }

  ScalarField2D d = dipole_bump(g, {2.0, 4.0}, {2.0, 2.0}, 0.8, 1.0);
  CHECK(std::abs(mean(d)) < 1e-15 * max_abs(d));
}

TEST_CASE("random_smooth_field: seeded, band-limited, unit norm") {
  const Grid2D g = Grid2D::make(64);
  ScalarField2D a = random_smooth_field(g, 4, 2.5, 5);
  ScalarField2D b = random_smooth_field(g, 4, 2.5, 5);
  CHECK(a.values == b.values);  // deterministic
  CHECK(sobolev_norm(a, 2.5, false) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(std::abs(mean(a)) < 1e-14);
  Spectrum2D s = to_spectrum(a);
  for (int a1 = 0; a1 < g.n; ++a1)
    for (int a2 = 0; a2 < g.n; ++a2) {
      const int k1 = std::abs(g.wavenumber(a1));
      const int k2 = std::abs(g.wavenumber(a2));
      if (std::max(k1, k2) > 4)
        CHECK(std::abs(s.coeffs[static_cast<std::size_t>(a1) * g.n + a2]) < 1e-13);
    }
}

TEST_CASE("calibrate_nonuniform: trivial base has a nonzero witness direction" *
          doctest::timeout(1200)) {
  NonuniformConfig cfg;
  cfg.n = 128;
  cfg.beta = 0.5;
  cfg.base_amplitude = 0.0;  // dexp at 0 is the linearized flow itself
  cfg.n_list = {2, 4};
  cfg.T = 0.5;
  cfg.target_displacement = 1.0;
  NonuniformCalibration cal = calibrate_nonuniform(cfg);
  CHECK(cal.cfg.kappa_star > 0.0);
  CHECK(cal.cfg.w_star_norm > 0.0);
  CHECK(cal.cfg.L_lip >= 1.0);
  CHECK(std::abs(cal.detail["pv_axis2"].get<double>()) > 0.0);
}

TEST_CASE("probe far-field decays along the jet axis (pv quadrature oracle)") {
  const Grid2D g = Grid2D::make(128);
  const Point2 x_star{3.0 * two_pi / 4.0, 3.0 * two_pi / 4.0};
  ScalarField2D probe =
      dipole_bump(g, {x_star[0], x_star[1] + 1.05}, {x_star[0], x_star[1] - 1.05}, 0.9, 1.0);
  double prev = 1e300;
  for (double off : {0.0, 0.6, 1.2}) {
    const double v =
        std::abs(pv_kernel_eval(probe, {x_star[0] + off, x_star[1]}, 0.5, 2));
    CHECK(v < prev);
    CHECK(v > 0.0);
    prev = v;
  }
}

TEST_CASE("run_nonuniform: degenerate direction gives identical data" *
          doctest::timeout(1200)) {
  NonuniformConfig cfg;
  cfg.n = 96;
  cfg.beta = 0.5;
  cfg.base_amplitude = 0.05;
  cfg.n_list = {2, 4};
  cfg.T = 0.25;
  cfg.target_displacement = 0.0;  // w* = 0
  ExperimentReport rep = run_nonuniform(cfg);
  for (const auto& r : rep.body["records"]) {
    CHECK(r["d0"].get<double>() == 0.0);
    CHECK(r["dT"].get<double>() <= 1e-12);
  }
}

TEST_CASE("run_holder_boost: closed-form shear mechanism" * doctest::timeout(600)) {
  HolderConfig cfg = HolderConfig::defaults();
  cfg.n_eval = 256;
  cfg.n_random_pairs = 20000;
  ExperimentReport rep = run_holder_boost(cfg);
  CHECK(rep.pass);
  CHECK(rep.body["epsilon_0"].get<double>() == doctest::Approx(1.0).epsilon(0.05));
  const auto& records = rep.body["records"];
  double prev_sup = 1e300;
  for (const auto& r : records) {
    // alpha-seminorm stays bounded below while the sup norm decays
    CHECK(r["witness_quotient"].get<double>() >= 0.9);
    CHECK(r["seminorm_lb"].get<double>() >= r["witness_quotient"].get<double>());
    const double sup = r["sup_diff"].get<double>();
    CHECK(sup < prev_sup);
    prev_sup = sup;
  }
  const double first = records.front()["sup_diff"].get<double>();
  const double last = records.back()["sup_diff"].get<double>();
  CHECK(last < 0.2 * first);
}

TEST_CASE("run_holder_boost: zero boost is exactly degenerate") {
  HolderConfig cfg;
  cfg.h_list = {0.0};
  cfg.T_list = {0.3};
  cfg.n_eval = 128;
  cfg.n_random_pairs = 1000;
  ExperimentReport rep = run_holder_boost(cfg);
  const auto& r = rep.body["records"][0];
  CHECK(r["sup_diff"].get<double>() == 0.0);
  CHECK(r["witness_quotient"].get<double>() == 0.0);
  CHECK(r["sampled_seminorm"].get<double>() == 0.0);
}

TEST_CASE("run_inequality_sweep: s = 0 row exact, scaling within tolerance" *
          doctest::timeout(1200)) {
  InequalityConfig cfg;
  cfg.n = 128;
  cfg.oracle_n = 256;
  cfg.r_list = {0.1, 0.3, 0.5};
  ExperimentReport rep = run_inequality_sweep(cfg);
  CHECK(rep.pass);
  CHECK(rep.body["c_of_s"]["0.000000"].get<double>() == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(rep.body["max_scaling_deviation"].get<double>() <= 2e-2);
  // CSV carries the disjoint rows with ratio 1 for s = 0
  CHECK(rep.csv.find("disjoint") != std::string::npos);
}

TEST_CASE("taylor_remainder_probe is reused by the dichotomy run" *
          doctest::timeout(1200)) {
  DichotomyConfig cfg;
  cfg.taylor_n = 64;
  cfg.taylor_max_mode = 2;
  cfg.taylor_t = 0.3;
  cfg.betas = {0.5};
  cfg.nonuniform.n = 96;
  cfg.nonuniform.n_list = {2, 4};
  cfg.nonuniform.T = 0.5;
  cfg.nonuniform.target_displacement = 1.2;
  cfg.nonuniform.base_amplitude = 0.0;
  ExperimentReport rep = run_dichotomy(cfg);
  const auto& section = rep.body["sections"][0];
  const double slope = section["taylor"]["slope"].get<double>();
  CHECK(slope > 1.8);
  CHECK(slope < 2.2);
  CHECK(section.contains("nonuniform"));
  CHECK(rep.csv.find("taylor") != std::string::npos);
  CHECK(rep.csv.find("eulerian") != std::string::npos);
}
