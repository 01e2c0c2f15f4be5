// Acceptance suite: one pass/fail line per criterion, exit 1 on any failure.
// Criteria run at full scale; expect tens of minutes total on two cores.
// Usage: acceptance [criterion ...]   (default: all)

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <set>
#include <string>
#include <vector>

#include "gsqg/eulerian.hpp"
#include "gsqg/experiments.hpp"
#include "gsqg/fft.hpp"
#include "gsqg/lagrangian.hpp"
#include "gsqg/norms.hpp"
#include "gsqg/spectral.hpp"

using namespace gsqg;

namespace {

int g_failures = 0;

void report(int criterion, const char* label, bool pass, const std::string& detail) {
  std::printf("[%s] criterion %d: %s%s%s\n", pass ? "PASS" : "FAIL", criterion, label,
              detail.empty() ? "" : " -- ", detail.c_str());
  std::fflush(stdout);
  if (!pass) ++g_failures;
}

std::string fmt(const char* pattern, double a, double b = 0.0, double c = 0.0) {
  char buf[256];
  std::snprintf(buf, sizeof buf, pattern, a, b, c);
  return buf;
}

ScalarField2D taylor_green_field(const Grid2D& g) {
  ScalarField2D f(g);
  const double dx = g.dx();
  for (int i = 0; i < g.n; ++i)
    for (int j = 0; j < g.n; ++j) f.at(i, j) = std::sin(i * dx) * std::sin(j * dx);
  return f;
}

double rel_field_err(const ScalarField2D& a, const ScalarField2D& b, double s) {
  ScalarField2D diff = a;
  for (std::size_t i = 0; i < diff.values.size(); ++i) diff.values[i] -= b.values[i];
  return sobolev_norm(diff, s, false) / sobolev_norm(b, s, false);
}

// ---- 1: operator exactness ---------------------------------------------------

void criterion_1() {
  const Grid2D g = Grid2D::make(128);
  const double dx = g.dx();
  double worst = 0.0;

  auto mode_field = [&](int k1, int k2, double phase) {
    ScalarField2D f(g);
    for (int i = 0; i < g.n; ++i)
      for (int j = 0; j < g.n; ++j)
        f.at(i, j) = std::cos(k1 * i * dx + k2 * j * dx + phase);
    return f;
  };
  auto check_op = [&](auto&& op, auto&& symbol) {
    for (auto [k1, k2] : {std::pair{1, 0}, {0, 3}, {2, -1}, {-5, 4}, {9, 9}, {12, -7}}) {
      for (double phase : {0.0, 1.3}) {
        ScalarField2D in = mode_field(k1, k2, phase);
        ScalarField2D out = op(in);
        const std::complex<double> m = symbol(double(k1), double(k2));
        double err = 0.0;
        for (int i = 0; i < g.n; ++i)
          for (int j = 0; j < g.n; ++j) {
            const double arg = k1 * i * dx + k2 * j * dx + phase;
            const double want = m.real() * std::cos(arg) - m.imag() * std::sin(arg);
            err = std::max(err, std::abs(out.at(i, j) - want));
          }
        worst = std::max(worst, err / std::max(1.0, std::abs(m)));
      }
    }
  };

  check_op([](const ScalarField2D& f) { return fractional_laplacian(f, 0.7); },
           [](double k1, double k2) {
             return std::complex<double>(std::pow(k1 * k1 + k2 * k2, 0.7), 0.0);
           });
  check_op([](const ScalarField2D& f) { return fractional_laplacian(f, -0.5); },
           [](double k1, double k2) {
             return std::complex<double>(std::pow(k1 * k1 + k2 * k2, -0.5), 0.0);
           });
  check_op([](const ScalarField2D& f) { return riesz_transform(f, 1); },
           [](double k1, double k2) {
             return std::complex<double>(0.0, k1 / std::hypot(k1, k2));
           });
  check_op([](const ScalarField2D& f) { return riesz_transform(f, 2); },
           [](double k1, double k2) {
             return std::complex<double>(0.0, k2 / std::hypot(k1, k2));
           });
  for (double beta : {0.0, 0.5, 1.0}) {
    check_op([beta](const ScalarField2D& f) { return s_beta(f, beta, 1); },
             [beta](double k1, double k2) {
               return std::complex<double>(
                   0.0, k1 * std::pow(k1 * k1 + k2 * k2, 0.5 * beta - 1.0));
             });
  }

  // R1^2 + R2^2 = -id and the velocity/theta roundtrip on band-limited data
  ScalarField2D f = random_smooth_field(g, 9, 2.5, 17);
  ScalarField2D rr = riesz_transform(riesz_transform(f, 1), 1);
  ScalarField2D r22 = riesz_transform(riesz_transform(f, 2), 2);
  double riesz_err = 0.0;
  for (std::size_t i = 0; i < f.values.size(); ++i)
    riesz_err = std::max(riesz_err,
                         std::abs(rr.values[i] + r22.values[i] + f.values[i]));
  riesz_err /= max_abs(f);

  double rt_err = 0.0;
  for (double beta : {0.0, 0.37, 1.0}) {
    ScalarField2D back = theta_from_velocity(velocity_from_theta(f, beta), beta);
    for (std::size_t i = 0; i < f.values.size(); ++i)
      rt_err = std::max(rt_err, std::abs(back.values[i] - f.values[i]));
  }
  rt_err /= max_abs(f);

  const bool pass = worst <= 1e-12 && riesz_err <= 1e-12 && rt_err <= 1e-12;
  report(1, "operator exactness on pure modes, Riesz identity, roundtrip", pass,
         fmt("mode err %.2e, riesz %.2e, roundtrip %.2e", worst, riesz_err, rt_err));
}

// ---- 2: stationarity ---------------------------------------------------------

void criterion_2() {
  const Grid2D g = Grid2D::make(128);
  ScalarField2D tg = taylor_green_field(g);
  double worst = 0.0;
  for (double beta : {0.0, 0.5, 1.0}) {
    SimTrajectory traj = integrate(SimState::transport(tg, beta), 1.0, 0.5, {1.0});
    ScalarField2D diff = traj.snapshots[0].theta;
    for (std::size_t i = 0; i < diff.values.size(); ++i) diff.values[i] -= tg.values[i];
    worst = std::max(worst, sobolev_norm(diff, 2.5, false));
  }
  report(2, "taylor-green stationary across beta in {0, 0.5, 1}", worst <= 1e-8,
         fmt("max |theta(1)-theta0|_{H^2.5} = %.2e (tol 1e-8)", worst));
}

// ---- 3: conservation ----------------------------------------------------------

void criterion_3() {
  const Grid2D g = Grid2D::make(256);
  ScalarField2D theta0 = random_smooth_field(g, 4, 2.5, 7);
  for (double& v : theta0.values) v *= 0.35;

  double worst_l2 = 0.0, worst_ham = 0.0;
  for (double beta : {0.0, 0.5, 1.0}) {
    SimTrajectory traj = integrate(SimState::transport(theta0, beta), 1.0, 0.5, {1.0});
    const auto& d = traj.diagnostics;
    worst_l2 = std::max(worst_l2,
                        std::abs(d.l2.back() - d.l2.front()) / d.l2.front());
    worst_ham = std::max(worst_ham, std::abs(d.hamiltonian.back() - d.hamiltonian.front()) /
                                        std::abs(d.hamiltonian.front()));
  }

  double worst_phi = 0.0, phi_start = 0.0;
  for (double beta : {0.0, 0.5, 1.0}) {
    VectorField2D u0 = velocity_from_theta(theta0, beta);
    SimTrajectory traj = integrate(SimState::velocity(u0, beta), 1.0, 0.5, {1.0});
    phi_start = std::max(phi_start, traj.diagnostics.phi_l2.front());
    for (double p : traj.diagnostics.phi_l2) worst_phi = std::max(worst_phi, p);
  }

  const bool pass = worst_l2 <= 1e-6 && worst_ham <= 1e-6 && worst_phi <= 1e-8;
  report(3, "L2/hamiltonian drift and divergence diagnostic", pass,
         fmt("drift l2 %.2e, H %.2e, sup|Phi| %.2e", worst_l2, worst_ham, worst_phi));
}

// ---- 4: formulation equivalence ------------------------------------------------

double equivalence_gap(int n, double beta, double cfl, std::uint64_t seed) {
  const Grid2D g = Grid2D::make(n);
  ScalarField2D theta0 = random_smooth_field(g, 4, 2.5, seed);
  for (double& v : theta0.values) v *= 0.35;
  const double T = 1.0;
  SimTrajectory tt = integrate(SimState::transport(theta0, beta), T, cfl, {T});
  VectorField2D u0 = velocity_from_theta(theta0, beta);
  SimTrajectory tv = integrate(SimState::velocity(u0, beta), T, cfl, {T});
  ScalarField2D theta_v = theta_from_velocity(tv.snapshots[0].u, beta);
  return rel_field_err(tv.snapshots.empty() ? theta_v : theta_v, tt.snapshots[0].theta,
                       1.5);
}

void criterion_4() {
  double worst = 0.0;
  for (double beta : {0.0, 0.5, 1.0})
    worst = std::max(worst, equivalence_gap(256, beta, 0.5, 7));
  // Refinement: doubled grid, halved dt at beta = 0.5. In the dealiased
  // Galerkin system the commutator form reproduces the mapped transport
  // dynamics exactly, so the gap sits at round-off and the 4x improvement
  // clause is vacuous whenever both measurements are below 1e-10.
  const double base = equivalence_gap(256, 0.5, 0.5, 7);
  const double fine = equivalence_gap(512, 0.5, 0.25, 7);
  const bool at_roundoff = std::max(base, fine) <= 1e-10;
  const bool pass = worst <= 1e-4 && (fine <= base / 4.0 || at_roundoff);
  report(4, "transport/velocity formulations agree and refine", pass,
         fmt("max rel H^{1.5} gap %.2e (tol 1e-4); refinement %.2e -> %.2e", worst, base,
             fine) +
             (at_roundoff ? " (gap at round-off; refinement clause vacuous)" : ""));
}

// ---- 5: lagrangian/eulerian consistency ----------------------------------------

void criterion_5() {
  const Grid2D g = Grid2D::make(256);
  ScalarField2D theta0 = random_smooth_field(g, 4, 2.5, 12);
  for (double& v : theta0.values) v *= 0.28;
  const double T = 0.5;
  double worst_rel = 0.0, worst_det = 0.0;
  for (double beta : {0.0, 0.5, 1.0}) {
    SimTrajectory eul = integrate(SimState::transport(theta0, beta), T, 0.5, {T});
    ExpMapResult lag = exponential_map(theta0, T, beta);
    worst_rel = std::max(worst_rel, rel_field_err(lag.theta_t, eul.snapshots[0].theta, 1.5));
    worst_det = std::max(worst_det, lag.det_deviation);
  }
  const bool pass = worst_rel <= 1e-3 && worst_det <= 1e-5;
  report(5, "lagrangian matches eulerian; volume preserved", pass,
         fmt("rel H^{1.5} gap %.2e (tol 1e-3), |det-1| %.2e (tol 1e-5)", worst_rel,
             worst_det));
}

// ---- 6: chart contraction -------------------------------------------------------

void criterion_6() {
  const Grid2D g = Grid2D::make(128);
  const double dx = g.dx();

  // random divergence-free v at the contraction radius
  ScalarField2D psi = random_smooth_field(g, 3, 3.5, 23);
  VectorField2D v(g);
  {
    ScalarField2D p2 = derivative(psi, 2);
    ScalarField2D p1 = derivative(psi, 1);
    for (std::size_t i = 0; i < v.u1.size(); ++i) {
      v.u1[i] = -p2.values[i];
      v.u2[i] = p1.values[i];
    }
    const double nrm = sobolev_norm(v, 2.5, false);
    for (double& x : v.u1) x *= 0.25 / nrm;
    for (double& x : v.u2) x *= 0.25 / nrm;
  }
  ChartCorrection c = volume_correct(v, 1e-12, 30);
  const bool conv_ok = c.iterations <= 30 && c.det_deviation <= 1e-10;

  // leading-order corrector of the taylor-green rotation at eps = 0.05
  const double eps = 0.05;
  VectorField2D vr(g);
  for (int i = 0; i < g.n; ++i)
    for (int j = 0; j < g.n; ++j) {
      const std::size_t idx = static_cast<std::size_t>(i) * g.n + j;
      vr.u1[idx] = -eps * std::sin(i * dx) * std::cos(j * dx);
      vr.u2[idx] = eps * std::cos(i * dx) * std::sin(j * dx);
    }
  ChartCorrection cr = volume_correct(vr, 1e-14, 60);
  double lead_err = 0.0;
  for (int i = 0; i < g.n; ++i)
    for (int j = 0; j < g.n; ++j) {
      const double want =
          -eps * eps * (std::cos(2.0 * i * dx) + std::cos(2.0 * j * dx)) / 8.0;
      lead_err = std::max(lead_err, std::abs(cr.phi.at(i, j) - want));
    }
  const bool lead_ok = lead_err <= std::pow(eps, 4.0);

  report(6, "volume chart contraction and eps^2 corrector", conv_ok && lead_ok,
         fmt("iterations %.0f, |det-1| %.1e, corrector gap %.2e (tol eps^4 = 6.25e-06)",
             double(c.iterations), c.det_deviation, lead_err));
}

// ---- 7: smooth dependence proxy --------------------------------------------------

void criterion_7() {
  const Grid2D g = Grid2D::make(128);
  bool pass = true;
  std::string detail;
  for (double beta : {0.0, 0.5, 1.0}) {
    ScalarField2D theta0 = random_smooth_field(g, 3, 2.5, 31);
    for (double& v : theta0.values) v *= 0.5;
    ScalarField2D dir = random_smooth_field(g, 3, 2.5, 32);
    TaylorProbeResult probe = taylor_remainder_probe(
        theta0, dir, {1e-3, 3.16e-3, 1e-2, 3.16e-2, 1e-1}, 0.5, beta, 2.5, 3e-3);
    if (!(probe.slope >= 1.8 && probe.slope <= 2.2)) pass = false;
    detail += fmt("slope(beta=%.1f)=%.3f ", beta, probe.slope);
  }

  // dexp at 0: first-order accuracy in t of the map derivative
  ScalarField2D theta0 = random_smooth_field(g, 3, 2.5, 31);
  for (double& v : theta0.values) v *= 0.5;
  ScalarField2D w = random_smooth_field(g, 3, 2.5, 33);
  VectorField2D uw = velocity_from_theta(w, 0.5);
  auto gap = [&](double t) {
    DexpResult res = dexp_directional(theta0, w, t, 0.5, 1e-2);
    VectorField2D want = uw;
    for (double& x : want.u1) x *= t;
    for (double& x : want.u2) x *= t;
    VectorField2D diff = res.derivative;
    for (std::size_t i = 0; i < diff.u1.size(); ++i) {
      diff.u1[i] -= want.u1[i];
      diff.u2[i] -= want.u2[i];
    }
    return max_abs(diff);
  };
  const double g1 = gap(0.2), g3 = gap(0.05);
  const double tslope = std::log2(g1 / g3) / 2.0;
  if (!(tslope >= 1.8)) pass = false;
  detail += fmt("dexp t-defect slope %.2f", tslope);
  report(7, "exponential map taylor remainder quadratic; dexp first order", pass, detail);
}

// ---- 8: theorem 1.4 construction --------------------------------------------------

void criterion_8() {
  bool pass = true;
  std::string detail;
  for (double beta : {0.0, 0.5, 1.0}) {
    NonuniformConfig cfg;
    cfg.n = 256;
    cfg.beta = beta;
    cfg.n_list = {2, 4, 8, 16};
    cfg.T = 1.0;
    try {
      ExperimentReport rep = run_nonuniform(cfg);
      if (!rep.pass) pass = false;
      detail += fmt("beta=%.1f c_report=%.2f ", beta,
                    rep.body["c_report"].get<double>());
      for (const auto& r : rep.body["records"]) {
        if (!r["disjoint_supports"].get<bool>()) pass = false;
        if (r["witness"].get<double>() < r["witness_bound"].get<double>()) pass = false;
      }
    } catch (const Error& e) {
      pass = false;
      detail += std::string("beta run threw: ") + e.what();
    }
  }
  report(8, "non-uniform dependence construction (shrinking bumps)", pass, detail);
}

// ---- 9: theorem 1.5 mechanism -------------------------------------------------------

void criterion_9() {
  HolderConfig cfg = HolderConfig::defaults();
  ExperimentReport rep = run_holder_boost(cfg);
  const double eps0 = rep.body["epsilon_0"].get<double>();
  bool pass = rep.pass && std::abs(eps0 - 1.0) <= 0.05;
  double worst_q = 1e300, sup_ratio = 0.0;
  for (const auto& r : rep.body["records"]) {
    worst_q = std::min(worst_q, r["witness_quotient"].get<double>());
    sup_ratio = std::max(sup_ratio, r["sup_diff"].get<double>() /
                                        std::pow(std::abs(r["ell"].get<double>()), cfg.alpha));
  }
  if (worst_q < 0.9 * eps0) pass = false;
  report(9, "holder-boost discontinuity with C0 convergence", pass,
         fmt("eps0 %.4f, min witness quotient %.3f, sup/h^a ratio %.2f", eps0, worst_q,
             sup_ratio));
}

// ---- 10: appendix inequalities -------------------------------------------------------

void criterion_10() {
  InequalityConfig cfg;
  cfg.s_list = {-1.0, 0.0, 0.5, 2.5};
  ExperimentReport rep = run_inequality_sweep(cfg);
  const double c0 = rep.body["c_of_s"]["0.000000"].get<double>();
  const double dev = rep.body["max_scaling_deviation"].get<double>();
  double cmin = 1e300;
  for (const auto& [key, value] : rep.body["c_of_s"].items()) {
    if (key != "0.000000") cmin = std::min(cmin, value.get<double>());
  }
  const bool pass = rep.pass && std::abs(c0 - 1.0) <= 1e-12 && cmin > 0.0 && dev <= 2e-2;
  report(10, "disjoint-support and scaling inequalities", pass,
         fmt("s=0 ratio %.15f, min c(s) %.4f, scaling dev %.2e", c0, cmin, dev));
}

}  // namespace

int main(int argc, char** argv) {
  std::set<int> wanted;
  for (int i = 1; i < argc; ++i) wanted.insert(std::atoi(argv[i]));
  auto enabled = [&](int k) { return wanted.empty() || wanted.count(k) > 0; };

  const auto t0 = std::chrono::steady_clock::now();
  if (enabled(1)) criterion_1();
  if (enabled(2)) criterion_2();
  if (enabled(3)) criterion_3();
  if (enabled(4)) criterion_4();
  if (enabled(5)) criterion_5();
  if (enabled(6)) criterion_6();
  if (enabled(7)) criterion_7();
  if (enabled(8)) criterion_8();
  if (enabled(9)) criterion_9();
  if (enabled(10)) criterion_10();
  const double secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  std::printf("%s (%d failure%s, %.0f s)\n", g_failures == 0 ? "ACCEPTANCE PASS" : "ACCEPTANCE FAIL",
              g_failures, g_failures == 1 ? "" : "s", secs);
  return g_failures == 0 ? 0 : 1;
}
