#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>

#include "gsqg/config.hpp"
#include "gsqg/eulerian.hpp"
#include "gsqg/experiments.hpp"
#include "gsqg/field_io.hpp"
#include "gsqg/norms.hpp"
#include "gsqg/spectral.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

std::string read_text_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) gsqg::fail(gsqg::Errc::IoError, "cannot open config file " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text(const fs::path& path, const std::string& text) {
  std::ofstream out(path);
  out << text;
}

gsqg::ScalarField2D make_initial(const gsqg::RunConfig& cfg) {
  const gsqg::Grid2D g = gsqg::Grid2D::make(cfg.n, cfg.length);
  if (cfg.initial == "taylor_green") {
    gsqg::ScalarField2D f(g);
    const double dx = g.dx();
    for (int i = 0; i < g.n; ++i)
      for (int j = 0; j < g.n; ++j)
        f.at(i, j) = cfg.amplitude * std::sin(i * dx) * std::sin(j * dx);
    return f;
  }
  if (cfg.initial == "random_smooth") {
    gsqg::ScalarField2D f = gsqg::random_smooth_field(g, cfg.max_mode, cfg.s, cfg.seed);
    for (double& v : f.values) v *= cfg.amplitude;
    return f;
  }
  // bump: mean-free compact blob in the domain center
  return gsqg::mean_free_bump(g, {cfg.length / 2.0, cfg.length / 2.0}, cfg.cutoff_radius,
                              cfg.amplitude);
}

json timing_entry(double seconds) {
  json t;
  t["seconds"] = seconds;
  return t;
}

int run_simulate(const gsqg::RunConfig& cfg) {
  const auto t_start = std::chrono::steady_clock::now();
  fs::create_directories(cfg.out_dir);
  fs::create_directories(fs::path(cfg.out_dir) / "fields");

  gsqg::ScalarField2D theta0 = make_initial(cfg);
  gsqg::SimState state0 = cfg.formulation == gsqg::Formulation::Transport
                              ? gsqg::SimState::transport(theta0, cfg.beta)
                              : gsqg::SimState::velocity(
                                    gsqg::velocity_from_theta(theta0, cfg.beta), cfg.beta);

  gsqg::IntegrateOptions opts;
  opts.diag_s = cfg.s;
  gsqg::SimTrajectory traj = gsqg::integrate(state0, cfg.T, cfg.cfl, cfg.outputs, opts);

  std::string csv = "t,l2,hamiltonian,phi_l2,hs_norm\n";
  for (std::size_t i = 0; i < traj.diagnostics.t.size(); ++i) {
    csv += std::to_string(traj.diagnostics.t[i]) + "," +
           std::to_string(traj.diagnostics.l2[i]) + "," +
           std::to_string(traj.diagnostics.hamiltonian[i]) + "," +
           std::to_string(traj.diagnostics.phi_l2[i]) + "," +
           std::to_string(traj.diagnostics.hs_norm[i]) + "\n";
  }
  write_text(fs::path(cfg.out_dir) / "series.csv", csv);

  int snap_id = 0;
  for (const gsqg::SimState& snap : traj.snapshots) {
    const std::string name = "theta_" + std::to_string(snap_id++) + ".gfld";
    if (snap.formulation == gsqg::Formulation::Transport)
      gsqg::write_field((fs::path(cfg.out_dir) / "fields" / name).string(), snap.theta,
                        snap.t);
    else
      gsqg::write_field((fs::path(cfg.out_dir) / "fields" / name).string(), snap.u, snap.t);
  }

  const auto& d = traj.diagnostics;
  const double l2_drift =
      std::abs(d.l2.back() - d.l2.front()) / std::max(d.l2.front(), 1e-300);
  const double ham_drift = std::abs(d.hamiltonian.back() - d.hamiltonian.front()) /
                           std::max(std::abs(d.hamiltonian.front()), 1e-300);

  json summary;
  summary["kind"] = "simulate";
  summary["config_text"] = gsqg::serialize(cfg);
  summary["steps"] = d.t.size() - 1;
  summary["l2_drift"] = l2_drift;
  summary["hamiltonian_drift"] = ham_drift;
  summary["final_phi_l2"] = d.phi_l2.back();
  summary["final_hs_norm"] = d.hs_norm.back();
  summary["snapshots"] = snap_id;
  const double secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t_start).count();
  summary["timing"] = timing_entry(secs);
  write_text(fs::path(cfg.out_dir) / "summary.json", summary.dump(2) + "\n");
  std::cout << "simulate: l2 drift " << l2_drift << ", hamiltonian drift " << ham_drift
            << "\n";
  return 0;
}

int run_experiment(const gsqg::RunConfig& cfg) {
  const auto t_start = std::chrono::steady_clock::now();
  fs::create_directories(cfg.out_dir);

  gsqg::ExperimentReport report;
  if (cfg.kind == "nonuniform") {
    gsqg::NonuniformConfig ncfg;
    ncfg.n = cfg.n;
    ncfg.length = cfg.length;
    ncfg.beta = cfg.beta;
    ncfg.s = cfg.s;
    ncfg.R = cfg.R;
    ncfg.n_list = cfg.n_list;
    ncfg.T = cfg.T;
    ncfg.cfl = cfg.cfl;
    ncfg.base_amplitude = cfg.base_amplitude;
    ncfg.target_displacement = cfg.target_displacement;
    ncfg.seed = cfg.seed;
    report = gsqg::run_nonuniform(ncfg);
  } else if (cfg.kind == "holder") {
    gsqg::HolderConfig hcfg = gsqg::HolderConfig::defaults();
    hcfg.alpha = cfg.alpha;
    hcfg.length = cfg.length;
    hcfg.cutoff_radius = cfg.cutoff_radius;
    hcfg.h_list.clear();
    hcfg.T_list.clear();
    for (int j = 0; j < cfg.n_boosts; ++j) {
      hcfg.h_list.push_back(cfg.h0 * std::pow(2.0, -j));
      hcfg.T_list.push_back(cfg.T0 * std::pow(2.0, -j));
    }
    hcfg.seed = cfg.seed;
    report = gsqg::run_holder_boost(hcfg);
  } else if (cfg.kind == "dichotomy") {
    gsqg::DichotomyConfig dcfg;
    dcfg.nonuniform.n = cfg.n;
    dcfg.nonuniform.beta = cfg.beta;
    dcfg.nonuniform.s = cfg.s;
    dcfg.nonuniform.R = cfg.R;
    dcfg.nonuniform.n_list = cfg.n_list;
    dcfg.nonuniform.T = cfg.T;
    dcfg.nonuniform.base_amplitude = cfg.base_amplitude;
    dcfg.nonuniform.target_displacement = cfg.target_displacement;
    dcfg.seed = cfg.seed;
    report = gsqg::run_dichotomy(dcfg);
  } else if (cfg.kind == "inequalities") {
    gsqg::InequalityConfig icfg;
    report = gsqg::run_inequality_sweep(icfg);
  } else {
    gsqg::fail(gsqg::Errc::ValidationError, "experiment.kind: unknown experiment");
  }

  if (!report.scalar_fields.empty() || !report.vector_fields.empty()) {
    fs::create_directories(fs::path(cfg.out_dir) / "fields");
    for (const auto& [name, field] : report.scalar_fields)
      gsqg::write_field((fs::path(cfg.out_dir) / "fields" / (name + ".gfld")).string(),
                        field, cfg.T);
    for (const auto& [name, field] : report.vector_fields)
      gsqg::write_field((fs::path(cfg.out_dir) / "fields" / (name + ".gfld")).string(),
                        field, cfg.T);
  }

  json summary;
  summary["kind"] = report.kind;
  summary["config_text"] = gsqg::serialize(cfg);
  summary["seed"] = cfg.seed;
  summary["report"] = report.body;
  summary["verdict"] = report.pass ? "pass" : "fail";
  const double secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t_start).count();
  summary["timing"] = timing_entry(secs);
  write_text(fs::path(cfg.out_dir) / "summary.json", summary.dump(2) + "\n");
  if (!report.csv.empty()) write_text(fs::path(cfg.out_dir) / "series.csv", report.csv);

  std::cout << "experiment " << report.kind << ": " << (report.pass ? "pass" : "FAIL")
            << " (" << secs << " s)\n";
  return report.pass ? 0 : 1;
}

int run_norms(const std::string& field_path, double s, double alpha) {
  gsqg::LoadedField lf = gsqg::read_field(field_path);
  json out;
  out["file"] = field_path;
  out["time"] = lf.info.time;
  if (lf.scalar) {
    const gsqg::ScalarField2D& f = *lf.scalar;
    out["l2"] = gsqg::l2_norm(f);
    out["hs"] = gsqg::sobolev_norm(f, s, false);
    out["hs_hom"] = gsqg::sobolev_norm(f, s, true);
    out["mean"] = gsqg::mean(f);
    gsqg::SamplingPlan plan;
    plan.focus_points = {{f.grid.length / 2.0, f.grid.length / 2.0}};
    plan.n_random = 20000;
    out["holder_seminorm_lb"] = gsqg::holder_seminorm(f, alpha, plan);
  } else {
    const gsqg::VectorField2D& v = *lf.vector;
    out["hs"] = gsqg::sobolev_norm(v, s, false);
    out["max_speed"] = gsqg::max_speed(v);
    out["div_linf"] = gsqg::max_abs(gsqg::divergence(v));
  }
  std::cout << out.dump(2) << "\n";
  return 0;
}

// Quick operator identities; exits nonzero on the first failure.
int run_selftest() {
  using namespace gsqg;
  int failures = 0;
  auto check = [&](const char* name, bool ok) {
    std::cout << (ok ? "[PASS] " : "[FAIL] ") << name << "\n";
    if (!ok) ++failures;
  };

  const Grid2D g = Grid2D::make(64);
  const double dx = g.dx();
  ScalarField2D sinx(g), tg(g);
  for (int i = 0; i < g.n; ++i)
    for (int j = 0; j < g.n; ++j) {
      sinx.at(i, j) = std::sin(i * dx);
      tg.at(i, j) = std::sin(i * dx) * std::sin(j * dx);
    }

  {
    ScalarField2D back = to_field(to_spectrum(tg));
    double err = 0.0;
    for (std::size_t i = 0; i < back.values.size(); ++i)
      err = std::max(err, std::abs(back.values[i] - tg.values[i]));
    check("dft roundtrip", err < 1e-13);
  }
  {
    ScalarField2D lap = fractional_laplacian(tg, 1.0);
    double err = 0.0;
    for (std::size_t i = 0; i < lap.values.size(); ++i)
      err = std::max(err, std::abs(lap.values[i] - 2.0 * tg.values[i]));
    check("fractional laplacian eigenfunction", err < 1e-12);
  }
  {
    ScalarField2D r1 = riesz_transform(sinx, 1);
    double err = 0.0;
    for (int i = 0; i < g.n; ++i)
      for (int j = 0; j < g.n; ++j) err = std::max(err, std::abs(r1.at(i, j) - std::cos(i * dx)));
    check("riesz transform R1 sin = cos", err < 1e-12);
  }
  {
    ScalarField2D rr = riesz_transform(riesz_transform(tg, 1), 1);
    ScalarField2D r2 = riesz_transform(riesz_transform(tg, 2), 2);
    double err = 0.0;
    for (std::size_t i = 0; i < rr.values.size(); ++i)
      err = std::max(err, std::abs(rr.values[i] + r2.values[i] + tg.values[i]));
    check("R1^2 + R2^2 = -id", err < 1e-12);
  }
  {
    VectorField2D u = velocity_from_theta(tg, 0.5);
    check("velocity divergence-free", max_abs(divergence(u)) < 1e-12 * max_abs(u));
    ScalarField2D back = theta_from_velocity(u, 0.5);
    double err = 0.0;
    for (std::size_t i = 0; i < back.values.size(); ++i)
      err = std::max(err, std::abs(back.values[i] - tg.values[i]));
    check("velocity/theta roundtrip", err < 1e-12);
  }
  {
    ScalarField2D rhs = transport_rhs(tg, 1.0);
    check("taylor-green is stationary", max_abs(rhs) < 1e-12);
  }
  return failures == 0 ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"gsqg: pseudo-spectral laboratory for the generalized SQG family"};
  app.require_subcommand(1);

  std::string config_path;
  std::string out_override;

  auto* sim = app.add_subcommand("simulate", "integrate one initial condition");
  sim->add_option("-c,--config", config_path, "config file")->required();
  sim->add_option("-o,--out", out_override, "output directory override");

  auto* exp = app.add_subcommand("experiment", "run a named experiment");
  std::string exp_kind;
  exp->add_option("kind", exp_kind, "nonuniform|holder|dichotomy|inequalities")->required();
  exp->add_option("-c,--config", config_path, "config file");
  exp->add_option("-o,--out", out_override, "output directory override");

  auto* norms_cmd = app.add_subcommand("norms", "norms of a stored field");
  std::string field_path;
  double s_opt = 2.5, alpha_opt = 0.6;
  norms_cmd->add_option("field", field_path, "gfld file")->required();
  norms_cmd->add_option("-s", s_opt, "Sobolev index");
  norms_cmd->add_option("--alpha", alpha_opt, "Holder exponent");

  app.add_subcommand("selftest", "fast operator identity checks");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;  // usage errors exit 2
  }

  try {
    if (app.got_subcommand("selftest")) return run_selftest();
    if (app.got_subcommand("norms")) return run_norms(field_path, s_opt, alpha_opt);

    gsqg::RunConfig cfg;
    if (!config_path.empty()) cfg = gsqg::parse_config(read_text_file(config_path));
    if (!out_override.empty()) cfg.out_dir = out_override;

    if (app.got_subcommand("simulate")) {
      cfg.kind = "simulate";
      return run_simulate(cfg);
    }
    // experiment
    if (!exp_kind.empty()) cfg.kind = exp_kind;
    if (cfg.kind == "simulate") return run_simulate(cfg);
    return run_experiment(cfg);
  } catch (const gsqg::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    const auto c = e.code();
    return (c == gsqg::Errc::ParseError || c == gsqg::Errc::ValidationError ||
            c == gsqg::Errc::IoError)
               ? 2
               : 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
