#include "gsqg/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <functional>
#include <mutex>
#include <random>
#include <thread>

#include "gsqg/eulerian.hpp"
#include "gsqg/norms.hpp"
#include "gsqg/spectral.hpp"
#include "field_ops.hpp"

namespace gsqg {

namespace {

// C-infty radial profile, identically 0 for r >= radius.
double smooth_bump(double r, double radius) {
  const double q = r / radius;
  if (q >= 1.0) return 0.0;
  return std::exp(1.0 - 1.0 / (1.0 - q * q));
}

// Analytic initial data: a signed sum of radial bumps. Evaluable at arbitrary
// points, which keeps compact supports exact under composition with the
// back-to-labels map (no interpolation smearing).
struct AnalyticBlob {
  struct Lobe {
    Point2 center;
    double radius;
    double coeff;
  };
  std::vector<Lobe> lobes;
  double length = two_pi;

  double operator()(const Point2& x) const {
    double acc = 0.0;
    for (const Lobe& l : lobes)
      acc += l.coeff * smooth_bump(periodic_distance(x, l.center, length), l.radius);
    return acc;
  }

  ScalarField2D sample(const Grid2D& g) const {
    ScalarField2D f(g);
    const double dx = g.dx();
    for (int i = 0; i < g.n; ++i)
      for (int j = 0; j < g.n; ++j) f.at(i, j) = (*this)({i * dx, j * dx});
    return f;
  }

  void scale(double c) {
    for (Lobe& l : lobes) l.coeff *= c;
  }

  AnalyticBlob scaled(double c) const {
    AnalyticBlob out = *this;
    out.scale(c);
    return out;
  }

  AnalyticBlob plus(const AnalyticBlob& other) const {
    AnalyticBlob out = *this;
    out.lobes.insert(out.lobes.end(), other.lobes.begin(), other.lobes.end());
    return out;
  }
};

double grid_mean(const AnalyticBlob& blob, const Grid2D& g) { return mean(blob.sample(g)); }

// Inner bump minus a mass-matched bump of full radius; exact zero grid mean,
// support inside B(center, radius).
AnalyticBlob mean_free_blob(const Grid2D& g, const Point2& center, double radius,
                            double amplitude) {
  AnalyticBlob inner{{{center, 0.5 * radius, 1.0}}, g.length};
  AnalyticBlob outer{{{center, radius, 1.0}}, g.length};
  const double mi = grid_mean(inner, g);
  const double mo = grid_mean(outer, g);
  AnalyticBlob out = inner.plus(outer.scaled(-mi / mo));
  out.scale(amplitude);
  return out;
}

AnalyticBlob dipole_blob(const Grid2D& g, const Point2& c_plus, const Point2& c_minus,
                         double radius, double amplitude) {
  AnalyticBlob pos{{{c_plus, radius, 1.0}}, g.length};
  AnalyticBlob neg{{{c_minus, radius, 1.0}}, g.length};
  const double mp = grid_mean(pos, g);
  const double mn = grid_mean(neg, g);
  AnalyticBlob out = pos.plus(neg.scaled(-mp / mn));
  out.scale(amplitude);
  return out;
}

// Run fn(i) for i in [0, count) on up to worker_count() threads; results are
// ordered by index, so reports stay deterministic.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& fn) {
  const int workers = std::min<std::size_t>(worker_count(), count);
  if (workers <= 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr first_error;
  std::mutex err_mutex;
  std::vector<std::thread> pool;
  for (int w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (;;) {
        const std::size_t i = next.fetch_add(1);
        if (i >= count) return;
        try {
          fn(i);
        } catch (...) {
          std::lock_guard<std::mutex> lock(err_mutex);
          if (!first_error) first_error = std::current_exception();
        }
      }
    });
  }
  for (auto& t : pool) t.join();
  if (first_error) std::rethrow_exception(first_error);
}

// max over the grid of the spectral 2-norm of I + D(disp).
double lipschitz_constant(const VectorField2D& disp) {
  Spectrum2D s1 = to_spectrum(ops::component(disp, 1));
  Spectrum2D s2 = to_spectrum(ops::component(disp, 2));
  ScalarField2D a11 = to_field(derivative(s1, 1));
  ScalarField2D a12 = to_field(derivative(s1, 2));
  ScalarField2D a21 = to_field(derivative(s2, 1));
  ScalarField2D a22 = to_field(derivative(s2, 2));
  double lmax = 0.0;
  for (std::size_t i = 0; i < a11.values.size(); ++i) {
    const double m11 = 1.0 + a11.values[i], m12 = a12.values[i];
    const double m21 = a21.values[i], m22 = 1.0 + a22.values[i];
    // largest singular value of [[m11,m12],[m21,m22]]
    const double t = m11 * m11 + m12 * m12 + m21 * m21 + m22 * m22;
    const double det = m11 * m22 - m12 * m21;
    const double disc = std::sqrt(std::max(0.0, t * t - 4.0 * det * det));
    lmax = std::max(lmax, std::sqrt(0.5 * (t + disc)));
  }
  return lmax;
}

Point2 map_image(const FlowMapPair& pair, const Point2& x) {
  const Grid2D& g = pair.grid;
  const double dx = g.dx();
  const int i = static_cast<int>(std::round(x[0] / dx)) % g.n;
  const int j = static_cast<int>(std::round(x[1] / dx)) % g.n;
  const std::size_t idx = static_cast<std::size_t>(i) * g.n + j;
  return {x[0] + pair.d_fwd.u1[idx], x[1] + pair.d_fwd.u2[idx]};
}

// Sample of blob composed with the back-to-labels map: (blob o A)(x_j).
ScalarField2D compose_analytic(const AnalyticBlob& blob, const VectorField2D& d_back) {
  const Grid2D& g = d_back.grid;
  ScalarField2D out(g);
  const double dx = g.dx();
  for (int i = 0; i < g.n; ++i)
    for (int j = 0; j < g.n; ++j) {
      const std::size_t idx = static_cast<std::size_t>(i) * g.n + j;
      out.at(i, j) = blob({i * dx + d_back.u1[idx], j * dx + d_back.u2[idx]});
    }
  return out;
}

bool supports_disjoint(const ScalarField2D& f, const ScalarField2D& g) {
  const double tf = 1e-14 * max_abs(f);
  const double tg = 1e-14 * max_abs(g);
  if (tf == 0.0 || tg == 0.0) return true;
  for (std::size_t i = 0; i < f.values.size(); ++i)
    if (std::abs(f.values[i]) > tf && std::abs(g.values[i]) > tg) return false;
  return true;
}

}  // namespace

int worker_count() {
  const int hw = std::max(1u, std::thread::hardware_concurrency());
  if (const char* env = std::getenv("GSQG_THREADS")) {
    const int v = std::atoi(env);
    if (v >= 1) return v;
  }
  return hw;
}

ScalarField2D mean_free_bump(const Grid2D& g, const Point2& center, double radius,
                             double amplitude) {
  return mean_free_blob(g, center, radius, amplitude).sample(g);
}

ScalarField2D dipole_bump(const Grid2D& g, const Point2& c_plus, const Point2& c_minus,
                          double radius, double amplitude) {
  return dipole_blob(g, c_plus, c_minus, radius, amplitude).sample(g);
}

ScalarField2D random_smooth_field(const Grid2D& g, int max_mode, double s,
                                  std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  ScalarField2D f(g);
  const double dx = g.dx();
  const double ks = g.k_scale();
  for (int k1 = -max_mode; k1 <= max_mode; ++k1) {
    for (int k2 = (k1 > 0 ? -max_mode : 1); k2 <= max_mode; ++k2) {
      // half-plane of modes; k1 <= 0 rows start at k2 = 1 to avoid double count
      if (k1 <= 0 && k2 <= 0) continue;
      const double a = gauss(rng), b = gauss(rng);
      for (int i = 0; i < g.n; ++i) {
        const double x1 = i * dx;
        for (int j = 0; j < g.n; ++j) {
          const double phase = ks * (k1 * x1 + k2 * j * dx);
          f.at(i, j) += a * std::cos(phase) + b * std::sin(phase);
        }
      }
    }
  }
  const double nrm = sobolev_norm(f, s, false);
  for (double& v : f.values) v /= nrm;
  return f;
}

// --- nonuniform dependence ----------------------------------------------------

namespace {

struct NonuniformSetup {
  Grid2D grid;
  AnalyticBlob base;        // theta0 (possibly zero lobes)
  AnalyticBlob probe_unit;  // theta*^unit, the unnormalized probe direction
  VectorField2D w_unit;     // S_beta^perp applied to the unit probe
  double w_unit_norm = 0.0;
  double w_unit_at_xstar = 0.0;
  double theta_unit_norm = 0.0;
};

NonuniformSetup build_setup(const NonuniformConfig& cfg) {
  NonuniformSetup s;
  s.grid = Grid2D::make(cfg.n, cfg.length);

  if (cfg.base_amplitude > 0.0) {
    AnalyticBlob raw = mean_free_blob(s.grid, cfg.base_center, cfg.base_radius, 1.0);
    const double nrm = sobolev_norm(raw.sample(s.grid), cfg.s, false);
    s.base = raw.scaled(cfg.base_amplitude / nrm);
    const double dist =
        periodic_distance(cfg.base_center, cfg.x_star, cfg.length) - cfg.base_radius;
    if (dist < cfg.separation)
      fail(Errc::ValidationError,
           "separation: dist(supp theta0, x*) = " + std::to_string(dist) +
               " is below the configured minimum");
  } else {
    s.base.length = cfg.length;
  }

  // Counter-rotating vortex pair straddling x*: the witness point sits in the
  // dipole jet core, so the induced velocity there is comparable to the peak
  // velocity of the probe itself (the far-field of an offset bump is much
  // weaker once mean compensation is in place).
  const Point2 c_plus{cfg.x_star[0], cfg.x_star[1] + cfg.probe_offset};
  const Point2 c_minus{cfg.x_star[0], cfg.x_star[1] - cfg.probe_offset};
  s.probe_unit = dipole_blob(s.grid, c_plus, c_minus, cfg.probe_radius, 1.0);

  ScalarField2D probe_field = s.probe_unit.sample(s.grid);
  s.theta_unit_norm = sobolev_norm(probe_field, cfg.s, false);
  VectorField2D w(s.grid);
  w.u1 = s_beta(probe_field, cfg.beta, 2).values;
  ScalarField2D w2 = s_beta(probe_field, cfg.beta, 1);
  for (std::size_t i = 0; i < w.u2.size(); ++i) w.u2[i] = -w2.values[i];
  s.w_unit = std::move(w);
  s.w_unit_norm = sobolev_norm(s.w_unit, cfg.s, false);

  const double dx2 = s.grid.dx();
  const int ci = static_cast<int>(std::round(cfg.x_star[0] / dx2)) % cfg.n;
  const int cj = static_cast<int>(std::round(cfg.x_star[1] / dx2)) % cfg.n;
  const std::size_t idx = static_cast<std::size_t>(ci) * cfg.n + cj;
  s.w_unit_at_xstar = std::hypot(s.w_unit.u1[idx], s.w_unit.u2[idx]);
  return s;
}

}  // namespace

NonuniformCalibration calibrate_nonuniform(const NonuniformConfig& cfg) {
  NonuniformSetup setup = build_setup(cfg);
  nlohmann::json detail;

  ScalarField2D base_field = setup.base.sample(setup.grid);
  ScalarField2D probe_field = setup.probe_unit.sample(setup.grid);

  detail["w_unit_at_xstar"] = setup.w_unit_at_xstar;
  detail["w_unit_norm"] = setup.w_unit_norm;
  detail["theta_unit_norm"] = setup.theta_unit_norm;
  if (setup.w_unit_at_xstar < 1e-10)
    fail(Errc::DegenerateDirection, "probe velocity vanishes at x*");

  // Free-space principal-value cross-check of the probe construction along
  // the jet axis (axis 2 kernel feeds u1 = S_{beta,2} theta): the quadrature
  // must be decisively nonzero at x* whenever the spectral velocity is.
  // Signs are convention-dependent and recorded, not asserted.
  const double pv2 = pv_kernel_eval(probe_field, cfg.x_star, cfg.beta, 2);
  const double spec2 = [&] {
    ScalarField2D sf = s_beta(probe_field, cfg.beta, 2);
    const double dxg = setup.grid.dx();
    const int ci = static_cast<int>(std::round(cfg.x_star[0] / dxg)) % cfg.n;
    const int cj = static_cast<int>(std::round(cfg.x_star[1] / dxg)) % cfg.n;
    return sf.at(ci, cj);
  }();
  detail["pv_axis2"] = pv2;
  detail["spectral_S2_at_xstar"] = spec2;
  detail["pv_spectral_sign_product"] = pv2 * spec2 > 0 ? 1 : -1;
  if (pv2 == 0.0) fail(Errc::DegenerateDirection, "principal-value quadrature vanished at x*");

  // kappa probe: FD derivative of the flow map at the base data, direction
  // theta*^unit. eps sized so the perturbed velocity stays mild.
  double eps = cfg.dexp_eps;
  ExpMapOptions probe_opts;
  probe_opts.cfl = cfg.cfl;
  DexpResult dres = dexp_directional(base_field, probe_field, cfg.T, cfg.beta, eps, probe_opts);
  const double dx = setup.grid.dx();
  const int ci = static_cast<int>(std::round(cfg.x_star[0] / dx)) % cfg.n;
  const int cj = static_cast<int>(std::round(cfg.x_star[1] / dx)) % cfg.n;
  const std::size_t idx = static_cast<std::size_t>(ci) * cfg.n + cj;
  const double delta_unit =
      std::hypot(dres.derivative.u1[idx], dres.derivative.u2[idx]);
  detail["dexp_unit_at_xstar"] = delta_unit;
  detail["dexp_richardson_error"] = dres.richardson_error;
  if (delta_unit < 1e-8)
    fail(Errc::DegenerateDirection,
         "flow-map derivative below 1e-8 at x*; pick a different probe or horizon");

  // Scale the data perturbation p* = alpha theta*^unit so the linearized
  // witness displacement |dexp(p*)(x*)| = alpha delta_unit hits the target.
  const double alpha = cfg.target_displacement / delta_unit;
  const double p_norm = alpha * setup.theta_unit_norm;  // = |w*|_{H^s} by convention
  NonuniformConfig out = cfg;
  out.w_star_norm = p_norm;
  out.kappa_star = cfg.target_displacement / p_norm;
  detail["alpha"] = alpha;
  detail["w_star_norm"] = p_norm;
  detail["kappa_star"] = out.kappa_star;
  // theta* amplitude consistent with w* = S_beta^perp theta*, |w*| = |p*|
  detail["theta_star_amplitude"] = alpha * setup.theta_unit_norm / setup.w_unit_norm;

  // Lipschitz pilot: the unperturbed base and the strongest perturbed member.
  double L = 1.0;
  {
    const int n_min = *std::min_element(cfg.n_list.begin(), cfg.n_list.end());
    AnalyticBlob strongest = setup.base.plus(setup.probe_unit.scaled(alpha / n_min));
    ScalarField2D data = strongest.sample(setup.grid);
    ops::subtract_mean(data);  // lobes overlapping the base can shift the mean slightly
    ExpMapOptions opts;
    opts.cfl = cfg.cfl;
    ExpMapResult pilot = exponential_map(data, cfg.T, cfg.beta, opts);
    L = std::max(L, lipschitz_constant(pilot.pair.d_fwd));
    if (cfg.base_amplitude > 0.0) {
      ExpMapResult base_run = exponential_map(base_field, cfg.T, cfg.beta, opts);
      L = std::max(L, lipschitz_constant(base_run.pair.d_fwd));
    }
  }
  out.L_lip = L;
  detail["L_lip"] = L;

  NonuniformCalibration cal;
  cal.cfg = out;
  cal.detail = std::move(detail);
  return cal;
}

ExperimentReport run_nonuniform(const NonuniformConfig& cfg_in) {
  ExperimentReport report;
  report.kind = "nonuniform";

  const bool degenerate = cfg_in.target_displacement == 0.0;
  NonuniformConfig cfg = cfg_in;
  nlohmann::json calibration;
  if (!degenerate && (cfg.kappa_star <= 0.0 || cfg.L_lip <= 0.0)) {
    NonuniformCalibration cal = calibrate_nonuniform(cfg);
    cfg = cal.cfg;
    calibration = std::move(cal.detail);
  }

  NonuniformSetup setup = build_setup(cfg);
  const Grid2D& grid = setup.grid;
  const double dx = grid.dx();

  // p* = alpha_p theta*^unit with |p*|_{H^s} = w_star_norm
  const double alpha_p = degenerate ? 0.0 : cfg.w_star_norm / setup.theta_unit_norm;

  struct Record {
    int n = 0;
    double r_formula = 0.0, r_used = 0.0;
    double d0 = 0.0, dT = 0.0;
    double witness = 0.0, witness_bound = 0.0;
    bool disjoint = false;
    double bump_ratio = 0.0;
    double bump_dT = 0.0;  // |vartheta o A1 - vartheta o A2|_{H^s}, the proof's own term
    double evolved_norm_1 = 0.0, evolved_norm_2 = 0.0;
    double consistency = 0.0, det_dev = 0.0;
    double lipschitz_1 = 0.0;
    ScalarField2D sol1, sol2;          // evolved scalars at T
    VectorField2D d_fwd_1, d_fwd_2;    // forward flow-map displacements
    VectorField2D d_back_1, d_back_2;  // back-to-labels displacements
  };
  std::vector<Record> records(cfg.n_list.size());

  const double r_floor = cfg.min_radius_cells * dx;

  parallel_for(cfg.n_list.size(), [&](std::size_t i) {
    Record rec;
    rec.n = cfg.n_list[i];
    const double kw = cfg.kappa_star * cfg.w_star_norm;  // = target displacement
    rec.r_formula = degenerate ? r_floor : kw / (8.0 * cfg.L_lip * rec.n);
    rec.r_used = std::max(rec.r_formula, r_floor);

    // theta^(1,n) = theta0 + shrinking bump of H^s size R/2 at x*
    AnalyticBlob vartheta = mean_free_blob(grid, cfg.x_star, rec.r_used, 1.0);
    {
      const double nrm = sobolev_norm(vartheta.sample(grid), cfg.s, false);
      vartheta.scale(0.5 * cfg.R / nrm);
    }
    AnalyticBlob data1 = setup.base.plus(vartheta);
    AnalyticBlob data2 = data1.plus(setup.probe_unit.scaled(alpha_p / rec.n));

    ScalarField2D f1 = data1.sample(grid);
    ScalarField2D f2 = data2.sample(grid);
    {
      ScalarField2D diff = ops::sum(f2, -1.0, f1);
      rec.d0 = sobolev_norm(diff, cfg.s, false);
    }
    ops::subtract_mean(f1);
    ops::subtract_mean(f2);

    ExpMapOptions opts;
    opts.cfl = cfg.cfl;
    ExpMapResult run1 = exponential_map(f1, cfg.T, cfg.beta, opts);
    ExpMapResult run2 = exponential_map(f2, cfg.T, cfg.beta, opts);
    rec.consistency = std::max(run1.consistency, run2.consistency);
    rec.det_dev = std::max(run1.det_deviation, run2.det_deviation);
    rec.lipschitz_1 = lipschitz_constant(run1.pair.d_fwd);

    // Eulerian solutions via the conservation law: theta(T) = data o A.
    ScalarField2D sol1 = compose_analytic(data1, run1.pair.d_back);
    ScalarField2D sol2 = compose_analytic(data2, run2.pair.d_back);
    {
      ScalarField2D diff = ops::sum(sol2, -1.0, sol1);
      rec.dT = sobolev_norm(diff, cfg.s, false);
    }

    // Displacement witness at x*.
    const Point2 g1x = map_image(run1.pair, cfg.x_star);
    const Point2 g2x = map_image(run2.pair, cfg.x_star);
    rec.witness = periodic_distance(g1x, g2x, cfg.length);
    rec.witness_bound = degenerate ? 0.0 : kw / (4.0 * rec.n);

    // The proof's geometric mechanism: evolved shrinking bumps stay disjoint.
    ScalarField2D bump1 = compose_analytic(vartheta, run1.pair.d_back);
    ScalarField2D bump2 = compose_analytic(vartheta, run2.pair.d_back);
    rec.disjoint = supports_disjoint(bump1, bump2);
    rec.evolved_norm_1 = sobolev_norm(bump1, cfg.s, false);
    rec.evolved_norm_2 = sobolev_norm(bump2, cfg.s, false);
    {
      ScalarField2D diff = ops::sum(bump1, -1.0, bump2);
      rec.bump_dT = sobolev_norm(diff, cfg.s, false);
      if (rec.disjoint && !degenerate)
        rec.bump_ratio = rec.bump_dT * rec.bump_dT /
                         (rec.evolved_norm_1 * rec.evolved_norm_1 +
                          rec.evolved_norm_2 * rec.evolved_norm_2);
    }
    rec.sol1 = std::move(sol1);
    rec.sol2 = std::move(sol2);
    rec.d_fwd_1 = std::move(run1.pair.d_fwd);
    rec.d_fwd_2 = std::move(run2.pair.d_fwd);
    rec.d_back_1 = std::move(run1.pair.d_back);
    rec.d_back_2 = std::move(run2.pair.d_back);
    records[i] = rec;
  });

  // Verdict against the thresholds recorded below.
  const double d0_slack = 1.01;
  const double c_report_min = 0.05;
  bool pass = true;
  double c_report = 1e300;
  for (const Record& r : records) {
    if (!degenerate) {
      if (r.d0 > d0_slack * cfg.w_star_norm / r.n) pass = false;
      if (r.witness < r.witness_bound) pass = false;
      if (!r.disjoint) pass = false;
    }
    c_report = std::min(c_report, r.dT / cfg.R);
  }
  if (degenerate) c_report = 0.0;
  if (!degenerate && c_report < c_report_min) pass = false;

  nlohmann::json body;
  body["config"] = {{"n", cfg.n},
                    {"length", cfg.length},
                    {"beta", cfg.beta},
                    {"s", cfg.s},
                    {"R", cfg.R},
                    {"T", cfg.T},
                    {"cfl", cfg.cfl},
                    {"n_list", cfg.n_list},
                    {"base_amplitude", cfg.base_amplitude},
                    {"probe_offset", cfg.probe_offset},
                    {"probe_radius", cfg.probe_radius},
                    {"target_displacement", cfg.target_displacement},
                    {"min_radius_cells", cfg.min_radius_cells},
                    {"seed", cfg.seed}};
  body["calibration"] = calibration;
  body["kappa_star"] = cfg.kappa_star;
  body["L_lip"] = cfg.L_lip;
  body["w_star_norm"] = cfg.w_star_norm;
  body["thresholds"] = {{"d0_slack", d0_slack},
                        {"c_report_min", c_report_min},
                        {"witness_factor", 4.0}};
  body["records"] = nlohmann::json::array();
  std::string csv =
      "n,r_formula,r_used,d0,dT,witness,witness_bound,disjoint,bump_ratio,"
      "pair_consistency,det_deviation\n";
  for (const Record& r : records) {
    body["records"].push_back({{"n", r.n},
                               {"r_formula", r.r_formula},
                               {"r_used", r.r_used},
                               {"radius_floored", r.r_formula < r.r_used},
                               {"d0", r.d0},
                               {"dT", r.dT},
                               {"witness", r.witness},
                               {"witness_bound", r.witness_bound},
                               {"disjoint_supports", r.disjoint},
                               {"evolved_bump_ratio", r.bump_ratio},
                               {"bump_dT", r.bump_dT},
                               {"evolved_norm_1", r.evolved_norm_1},
                               {"evolved_norm_2", r.evolved_norm_2},
                               {"pair_consistency", r.consistency},
                               {"det_deviation", r.det_dev},
                               {"lipschitz", r.lipschitz_1}});
    csv += std::to_string(r.n) + "," + std::to_string(r.r_formula) + "," +
           std::to_string(r.r_used) + "," + std::to_string(r.d0) + "," +
           std::to_string(r.dT) + "," + std::to_string(r.witness) + "," +
           std::to_string(r.witness_bound) + "," + (r.disjoint ? "1" : "0") + "," +
           std::to_string(r.bump_ratio) + "," + std::to_string(r.consistency) + "," +
           std::to_string(r.det_dev) + "\n";
  }
  body["c_report"] = c_report;
  body["verdict"] = pass ? "pass" : "fail";

  // Persist the largest-index pair: evolved scalars plus both flow maps.
  if (!records.empty()) {
    Record& last = records.back();
    const std::string tag = "n" + std::to_string(last.n);
    report.scalar_fields.emplace_back("theta1_" + tag, std::move(last.sol1));
    report.scalar_fields.emplace_back("theta2_" + tag, std::move(last.sol2));
    report.vector_fields.emplace_back("gamma1_fwd_" + tag, std::move(last.d_fwd_1));
    report.vector_fields.emplace_back("gamma1_back_" + tag, std::move(last.d_back_1));
    report.vector_fields.emplace_back("gamma2_fwd_" + tag, std::move(last.d_fwd_2));
    report.vector_fields.emplace_back("gamma2_back_" + tag, std::move(last.d_back_2));
  }

  report.pass = pass;
  report.body = std::move(body);
  report.csv = std::move(csv);
  return report;
}

// --- Holder boost --------------------------------------------------------------

namespace {

// C-infty cutoff: 1 for q <= 1/2, 0 for q >= 1.
double smooth_cutoff(double q) {
  if (q <= 0.5) return 1.0;
  if (q >= 1.0) return 0.0;
  auto phi = [](double t) { return t > 0.0 ? std::exp(-1.0 / t) : 0.0; };
  const double t = (1.0 - q) / 0.5;  // 1 at q=1/2, 0 at q=1
  return phi(t) / (phi(t) + phi(1.0 - t));
}

}  // namespace

HolderConfig HolderConfig::defaults() {
  HolderConfig cfg;
  for (int j = 0; j < 5; ++j) {
    cfg.h_list.push_back(0.2 * std::pow(2.0, -j));
    cfg.T_list.push_back(0.4 * std::pow(2.0, -j));
  }
  return cfg;
}

ExperimentReport run_holder_boost(const HolderConfig& cfg) {
  if (!(cfg.alpha > 0.0 && cfg.alpha < 1.0))
    fail(Errc::ValidationError, "alpha: must be in (0,1)");
  if (cfg.h_list.size() != cfg.T_list.size())
    fail(Errc::ValidationError, "h_list: must match T_list in length");

  const double L = cfg.length;
  const double alpha = cfg.alpha;
  const Point2 x0 = cfg.x0;

  // theta0(x) = chi(|x-x0|/cutoff) |x-x0|^alpha: C^alpha but not little-Holder
  // at x0, one-signed near x0 (alignment condition).
  auto theta0 = [&](const Point2& x) {
    const double r = periodic_distance(x, x0, L);
    if (r == 0.0) return 0.0;
    return smooth_cutoff(r / cfg.cutoff_radius) * std::pow(r, alpha);
  };
  auto g_shear = [&](double x2) { return cfg.shear_amplitude * std::sin(x2); };

  // eta(t,x) = (x1 + t g(x2), x2) and the boosted eta_n = eta - h t e1; both
  // invert in closed form and satisfy det(D eta) = 1 exactly.
  auto theta_of = [&](double t, const Point2& x) {
    return theta0({x[0] - t * g_shear(x[1]), x[1]});
  };
  auto theta_n_of = [&](double t, double h, const Point2& x) {
    return theta0({x[0] - t * g_shear(x[1]) + h * t, x[1]});
  };

  // epsilon_0 = liminf |theta0(x0 + l)|/|l|^alpha along the boost offsets.
  double eps0 = 1e300;
  for (std::size_t j = 0; j < cfg.h_list.size(); ++j) {
    const double ell = cfg.h_list[j] * cfg.T_list[j];
    if (ell == 0.0) continue;
    eps0 = std::min(eps0, theta0({x0[0] - ell, x0[1]}) / std::pow(std::abs(ell), alpha));
  }
  if (eps0 == 1e300) eps0 = 0.0;  // all boosts degenerate

  const Grid2D grid = Grid2D::make(cfg.n_eval, L);
  const double dxg = grid.dx();

  struct Record {
    double h = 0.0, T = 0.0, ell = 0.0;
    double sup_diff = 0.0;
    double sup_bound = 0.0;
    double witness_quotient = 0.0;
    double sampled_seminorm = 0.0;
    double seminorm_lb = 0.0;
  };
  std::vector<Record> records(cfg.h_list.size());
  ScalarField2D first_diff;

  // Lipschitz constant of theta0 away from the cusp (for the sup-norm bound):
  // |theta0(x+delta)-theta0(x)| <= Lip |delta| outside B(x0, |delta|).
  double lip_outside = 0.0;
  for (int i = 0; i < 4096; ++i) {
    const double r = cfg.cutoff_radius * (i + 0.5) / 4096.0;
    // |d/dr (chi(r/c) r^a)| <= chi' r^a / c + chi a r^{a-1}
    const double q = r / cfg.cutoff_radius;
    const double h = 1e-6;
    const double dchi = (smooth_cutoff(q + h) - smooth_cutoff(q - h)) / (2.0 * h);
    const double val = std::abs(dchi / cfg.cutoff_radius) * std::pow(r, alpha) +
                       smooth_cutoff(q) * alpha * std::pow(r, alpha - 1.0);
    if (r >= 0.05 * cfg.cutoff_radius) lip_outside = std::max(lip_outside, val);
  }

  parallel_for(cfg.h_list.size(), [&](std::size_t j) {
    Record rec;
    rec.h = cfg.h_list[j];
    rec.T = cfg.T_list[j];
    rec.ell = rec.h * rec.T;

    // Difference field on the evaluation grid.
    ScalarField2D diff(grid);
    for (int i = 0; i < grid.n; ++i)
      for (int jj = 0; jj < grid.n; ++jj) {
        const Point2 x{i * dxg, jj * dxg};
        diff.at(i, jj) = theta_n_of(rec.T, rec.h, x) - theta_of(rec.T, x);
      }
    rec.sup_diff = max_abs(diff);
    rec.sup_bound = lip_outside * std::abs(rec.ell) + std::pow(std::abs(rec.ell), alpha);

    // Proof witness pair: x = eta(T, x0), y = eta_n(T, x0).
    const Point2 wx{x0[0] + rec.T * g_shear(x0[1]), x0[1]};
    const Point2 wy{wx[0] - rec.h * rec.T, wx[1]};
    if (rec.ell != 0.0) {
      const double dfx = theta_n_of(rec.T, rec.h, wx) - theta_of(rec.T, wx);
      const double dfy = theta_n_of(rec.T, rec.h, wy) - theta_of(rec.T, wy);
      rec.witness_quotient =
          std::abs(dfx - dfy) / std::pow(periodic_distance(wx, wy, L), alpha);
    }

    SamplingPlan plan;
    plan.focus_points = {wx};
    plan.window = std::min(0.5, 4.0 * std::abs(rec.ell) + 8.0 * dxg);
    plan.n_random = cfg.n_random_pairs;
    plan.seed = cfg.seed + j;
    rec.sampled_seminorm = holder_seminorm(diff, alpha, plan);
    rec.seminorm_lb = std::max(rec.sampled_seminorm, rec.witness_quotient);
    records[j] = rec;
    if (j == 0) first_diff = std::move(diff);
  });

  const double eps0_band = 0.05;
  const double witness_factor = 0.9;
  const double sup_ratio_cap = 2.5;
  bool pass = std::abs(eps0 - 1.0) <= eps0_band;
  for (const Record& r : records) {
    if (r.witness_quotient < witness_factor * eps0) pass = false;
    if (r.sup_diff > sup_ratio_cap * std::pow(std::abs(r.ell), alpha)) pass = false;
  }
  // C^0 convergence while the alpha-seminorm stays bounded away from zero.
  if (records.back().sup_diff > 0.2 * records.front().sup_diff) pass = false;

  nlohmann::json body;
  body["config"] = {{"alpha", alpha},
                    {"x0", {x0[0], x0[1]}},
                    {"cutoff_radius", cfg.cutoff_radius},
                    {"shear_amplitude", cfg.shear_amplitude},
                    {"h_list", cfg.h_list},
                    {"T_list", cfg.T_list},
                    {"n_eval", cfg.n_eval},
                    {"seed", cfg.seed}};
  body["epsilon_0"] = eps0;
  body["lip_outside"] = lip_outside;
  body["thresholds"] = {{"eps0_band", eps0_band},
                        {"witness_factor", witness_factor},
                        {"sup_ratio_cap", sup_ratio_cap},
                        {"c0_decay_factor", 0.2}};
  body["records"] = nlohmann::json::array();
  std::string csv = "h,T,ell,sup_diff,sup_bound,witness_quotient,seminorm_lb\n";
  for (const Record& r : records) {
    body["records"].push_back({{"h", r.h},
                               {"T", r.T},
                               {"ell", r.ell},
                               {"sup_diff", r.sup_diff},
                               {"sup_bound", r.sup_bound},
                               {"witness_quotient", r.witness_quotient},
                               {"sampled_seminorm", r.sampled_seminorm},
                               {"seminorm_lb", r.seminorm_lb}});
    csv += std::to_string(r.h) + "," + std::to_string(r.T) + "," + std::to_string(r.ell) +
           "," + std::to_string(r.sup_diff) + "," + std::to_string(r.sup_bound) + "," +
           std::to_string(r.witness_quotient) + "," + std::to_string(r.seminorm_lb) + "\n";
  }
  body["verdict"] = pass ? "pass" : "fail";

  ExperimentReport report;
  report.kind = "holder";
  report.pass = pass;
  report.body = std::move(body);
  report.csv = std::move(csv);
  if (!first_diff.values.empty())
    report.scalar_fields.emplace_back("difference_boost0", std::move(first_diff));
  return report;
}

// --- dichotomy ------------------------------------------------------------------

TaylorProbeResult taylor_remainder_probe(const ScalarField2D& theta0,
                                         const ScalarField2D& direction,
                                         const std::vector<double>& h_norms, double t,
                                         double beta, double s, double fd_eps,
                                         const ExpMapOptions& opts) {
  TaylorProbeResult out;
  const double dir_norm = sobolev_norm(direction, s, false);

  ExpMapOptions run_opts = opts;
  if (run_opts.n_steps <= 0) {
    VectorField2D u0 = velocity_from_theta(dealias(to_spectrum(theta0)), beta);
    const double dt = run_opts.cfl * theta0.grid.dx() / std::max(1.0, max_speed(u0) + 0.3);
    run_opts.n_steps = std::max(1, static_cast<int>(std::ceil(t / dt)));
  }
  run_opts.track_det = false;

  ExpMapResult base = exponential_map(theta0, t, beta, run_opts);
  DexpResult dexp = dexp_directional(theta0, direction, t, beta, fd_eps, run_opts);

  for (double target : h_norms) {
    const double a = target / dir_norm;
    ScalarField2D data = ops::sum(theta0, a, direction);
    ExpMapResult run = exponential_map(data, t, beta, run_opts);
    VectorField2D rem = run.pair.d_fwd;
    ops::axpy(rem, -1.0, base.pair.d_fwd);
    ops::axpy(rem, -a, dexp.derivative);
    double acc = 0.0;
    for (std::size_t i = 0; i < rem.u1.size(); ++i)
      acc += rem.u1[i] * rem.u1[i] + rem.u2[i] * rem.u2[i];
    out.h_norms.push_back(target);
    out.remainders.push_back(std::sqrt(acc / static_cast<double>(rem.u1.size())));
  }

  // Least-squares slope of log(remainder) vs log(h).
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  const double m = static_cast<double>(out.h_norms.size());
  for (std::size_t i = 0; i < out.h_norms.size(); ++i) {
    const double x = std::log(out.h_norms[i]);
    const double y = std::log(std::max(out.remainders[i], 1e-300));
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  out.slope = (m * sxy - sx * sy) / (m * sxx - sx * sx);
  return out;
}

ExperimentReport run_dichotomy(const DichotomyConfig& cfg) {
  nlohmann::json body;
  body["sections"] = nlohmann::json::array();
  bool pass = true;
  std::string csv = "beta,section,x,y\n";

  for (double beta : cfg.betas) {
    nlohmann::json section;
    section["beta"] = beta;

    // (a) Lagrangian smoothness probe.
    const Grid2D g = Grid2D::make(cfg.taylor_n, cfg.nonuniform.length);
    ScalarField2D theta0 = random_smooth_field(g, cfg.taylor_max_mode, cfg.nonuniform.s,
                                               cfg.seed);
    ops::scale(theta0, 0.5);
    ScalarField2D dir = random_smooth_field(g, cfg.taylor_max_mode, cfg.nonuniform.s,
                                            cfg.seed + 7);
    TaylorProbeResult probe = taylor_remainder_probe(theta0, dir, cfg.taylor_h_norms,
                                                     cfg.taylor_t, beta, cfg.nonuniform.s,
                                                     cfg.taylor_fd_eps);
    section["taylor"] = {{"h_norms", probe.h_norms},
                         {"remainders", probe.remainders},
                         {"slope", probe.slope}};
    if (!(probe.slope > 1.8 && probe.slope < 2.2)) pass = false;
    for (std::size_t i = 0; i < probe.h_norms.size(); ++i)
      csv += std::to_string(beta) + ",taylor," + std::to_string(probe.h_norms[i]) + "," +
             std::to_string(probe.remainders[i]) + "\n";

    // (b) Eulerian modulus-of-continuity table.
    NonuniformConfig ncfg = cfg.nonuniform;
    ncfg.beta = beta;
    ExperimentReport nrep = run_nonuniform(ncfg);
    section["nonuniform"] = nrep.body;
    if (!nrep.pass) pass = false;
    for (const auto& r : nrep.body["records"]) {
      csv += std::to_string(beta) + ",eulerian," + r["d0"].dump() + "," + r["dT"].dump() +
             "\n";
    }
    body["sections"].push_back(std::move(section));
  }
  body["thresholds"] = {{"slope_band", {1.8, 2.2}}};
  body["verdict"] = pass ? "pass" : "fail";

  ExperimentReport report;
  report.kind = "dichotomy";
  report.pass = pass;
  report.body = std::move(body);
  report.csv = std::move(csv);
  return report;
}

// --- inequality sweeps -----------------------------------------------------------

ExperimentReport run_inequality_sweep(const InequalityConfig& cfg) {
  nlohmann::json body;
  std::string csv = "section,param,s,d,value\n";
  bool pass = true;

  // Disjoint-support ratios: two translates of one bump, separation 4r.
  body["disjoint"] = nlohmann::json::array();
  for (double s : cfg.s_list) {
    double cmin = 1e300;
    for (double r : cfg.r_list) {
      auto ratio_at = [&](int n) {
        const Grid2D g = Grid2D::make(n, two_pi);
        const Point2 c1{two_pi / 2.0 - 2.0 * r, two_pi / 2.0};
        const Point2 c2{two_pi / 2.0 + 2.0 * r, two_pi / 2.0};
        ScalarField2D f(g), h(g);
        const double dxg = g.dx();
        for (int i = 0; i < n; ++i)
          for (int j = 0; j < n; ++j) {
            const Point2 p{i * dxg, j * dxg};
            f.at(i, j) = smooth_bump(periodic_distance(p, c1, two_pi), r);
            h.at(i, j) = smooth_bump(periodic_distance(p, c2, two_pi), r);
          }
        return disjoint_support_ratio(f, h, s);
      };
      const double ratio = ratio_at(cfg.n);
      const double oracle = ratio_at(cfg.oracle_n);
      cmin = std::min(cmin, ratio);
      body["disjoint"].push_back(
          {{"s", s}, {"r", r}, {"ratio", ratio}, {"oracle_ratio", oracle}});
      csv += "disjoint," + std::to_string(r) + "," + std::to_string(s) + ",2," +
             std::to_string(ratio) + "\n";
    }
    body["c_of_s"][std::to_string(s)] = cmin;
    if (s == 0.0) {
      if (std::abs(cmin - 1.0) > 1e-12) pass = false;
    } else if (cmin < cfg.c_min) {
      pass = false;
    }
  }

  // Scaling property.
  body["scaling"] = nlohmann::json::array();
  double max_dev = 0.0;
  for (int d : {1, 2}) {
    for (double lambda : cfg.lambda_list) {
      std::vector<double> s_values = cfg.scaling_s_list;
      s_values.push_back(0.5 * d);  // scale-invariant index
      for (double s : s_values) {
        BumpProfile prof;
        prof.radius = 0.5;
        // d = 2 needs the finer grid: the Hdot^{2.5} weight is sensitive to
        // how well the unscaled bump's spectral tail is resolved
        const int n = d == 1 ? 8192 : 1536;
        const double ratio = scaling_ratio(prof, lambda, s, d, n);
        const double dev = std::abs(ratio - 1.0);
        max_dev = std::max(max_dev, dev);
        body["scaling"].push_back(
            {{"d", d}, {"lambda", lambda}, {"s", s}, {"ratio", ratio}, {"deviation", dev}});
        csv += "scaling," + std::to_string(lambda) + "," + std::to_string(s) + "," +
               std::to_string(d) + "," + std::to_string(ratio) + "\n";
        if (dev > cfg.scaling_tol) pass = false;
      }
    }
  }
  body["max_scaling_deviation"] = max_dev;
  body["thresholds"] = {{"c_min", cfg.c_min}, {"scaling_tol", cfg.scaling_tol}};
  body["verdict"] = pass ? "pass" : "fail";

  ExperimentReport report;
  report.kind = "inequalities";
  report.pass = pass;
  report.body = std::move(body);
  report.csv = std::move(csv);
  return report;
}

}  // namespace gsqg
