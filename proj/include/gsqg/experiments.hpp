#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "gsqg/grid.hpp"
#include "gsqg/lagrangian.hpp"

namespace gsqg {

// --- data construction helpers ---------------------------------------------

// C-infty bump chi(|x-center|/radius) with exactly zero grid mean: a half-radius
// inner bump minus a rescaled full-radius one. Support inside B(center, radius).
ScalarField2D mean_free_bump(const Grid2D& g, const Point2& center, double radius,
                             double amplitude);

// Offset-compensated pair: bump at c_plus minus a mass-matched bump at c_minus,
// both of the given radius. Zero grid mean, support in the two balls.
ScalarField2D dipole_bump(const Grid2D& g, const Point2& c_plus, const Point2& c_minus,
                          double radius, double amplitude);

// Mean-free random field with modes up to max_mode, unit H^s norm, seeded.
ScalarField2D random_smooth_field(const Grid2D& g, int max_mode, double s,
                                  std::uint64_t seed);

// --- reports ----------------------------------------------------------------

struct ExperimentReport {
  std::string kind;
  bool pass = false;
  nlohmann::json body;  // config echo, per-index records, thresholds, verdict
  std::string csv;      // companion series (may be empty)
  // representative fields for the output directory (solution snapshots,
  // flow-map displacements), written by the CLI as fields/<name>.gfld
  std::vector<std::pair<std::string, ScalarField2D>> scalar_fields;
  std::vector<std::pair<std::string, VectorField2D>> vector_fields;
};

// --- non-uniform dependence (sec. 4 construction) ---------------------------

struct NonuniformConfig {
  int n = 256;
  double length = two_pi;
  double beta = 0.5;
  double s = 2.5;
  double R = 0.4;                   // perturbation budget; bumps carry R/2
  std::vector<int> n_list{2, 4, 8, 16};
  double T = 1.0;
  double cfl = 0.5;
  // geometry: base support and witness point at maximal torus separation
  double base_amplitude = 0.05;     // 0 gives the trivial base theta0 = 0
  Point2 base_center{two_pi / 4.0, two_pi / 4.0};
  double base_radius = 0.9;
  Point2 x_star{3.0 * two_pi / 4.0, 3.0 * two_pi / 4.0};
  double separation = two_pi / 2.0;
  // probe theta*: counter-rotating lobe pair at x_star +- offset e2, so the
  // witness point rides the dipole jet. Wide lobes keep the velocity smooth
  // enough for the back-to-labels map at beta = 1.
  double probe_offset = 1.55;
  double probe_radius = 1.4;
  // calibration targets and probe step
  double target_displacement = 4.0;  // desired |dexp(p*)(x_star)| ~ kappa*|w*|
  double dexp_eps = 5e-3;
  double min_radius_cells = 3.0;     // resolvability floor on r_n, in units of dx
  std::uint64_t seed = 1;
  // filled by the calibration phase
  double kappa_star = 0.0;
  double L_lip = 0.0;
  double w_star_norm = 0.0;
};

struct NonuniformCalibration {
  NonuniformConfig cfg;    // copy with kappa_star, L_lip, w_star_norm filled
  nlohmann::json detail;   // every measured quantity
};

// Measures w*, kappa*, L on pilot runs; scales the probe amplitude so the
// linearized witness displacement reaches cfg.target_displacement. Throws
// DegenerateDirection if |dexp(p*)(x_star)| < 1e-8.
NonuniformCalibration calibrate_nonuniform(const NonuniformConfig& cfg);

// Shrinking-bump data pairs evolved through the exponential map; records
// d0(n), dT(n), the displacement witness and the support-disjointness check.
ExperimentReport run_nonuniform(const NonuniformConfig& cfg);

// --- Holder-boost (sec. 5 mechanism, closed-form shear) ---------------------

struct HolderConfig {
  double alpha = 0.6;
  double length = two_pi;
  Point2 x0{two_pi / 2.0, two_pi / 2.0};
  double cutoff_radius = 0.5;
  double shear_amplitude = 1.0;   // eta(t,x) = (x1 + t g(x2), x2), g = a sin(x2)
  std::vector<double> h_list;     // boost magnitudes, decreasing to 0
  std::vector<double> T_list;     // matching evaluation times
  int n_eval = 512;               // evaluation grid for the sampled seminorm
  std::size_t n_random_pairs = 100000;
  std::uint64_t seed = 1;

  static HolderConfig defaults();
};

ExperimentReport run_holder_boost(const HolderConfig& cfg);

// --- dichotomy (analytic Lagrangian map vs. non-uniform Eulerian map) -------

struct TaylorProbeResult {
  std::vector<double> h_norms;
  std::vector<double> remainders;  // |gamma[h] - gamma[0] - dexp h|_{L2}
  double slope = 0.0;
};

// Taylor remainder of the exponential map along a fixed direction, amplitudes
// chosen so |h|_{H^s} sweeps the requested range.
TaylorProbeResult taylor_remainder_probe(const ScalarField2D& theta0,
                                         const ScalarField2D& direction,
                                         const std::vector<double>& h_norms, double t,
                                         double beta, double s, double fd_eps,
                                         const ExpMapOptions& opts = {});

struct DichotomyConfig {
  NonuniformConfig nonuniform;           // one section per beta value
  std::vector<double> betas{0.0, 0.5, 1.0};
  std::vector<double> taylor_h_norms{1e-3, 3.16e-3, 1e-2, 3.16e-2, 1e-1};
  double taylor_t = 0.5;
  double taylor_fd_eps = 3e-3;
  int taylor_n = 128;
  int taylor_max_mode = 3;
  std::uint64_t seed = 1;
};

ExperimentReport run_dichotomy(const DichotomyConfig& cfg);

// --- appendix inequality sweeps ---------------------------------------------

struct InequalityConfig {
  std::vector<double> s_list{-1.0, 0.0, 0.5, 2.5};
  std::vector<double> r_list{0.05, 0.1, 0.2, 0.3, 0.4, 0.5};
  std::vector<double> lambda_list{2.0, 4.0};
  std::vector<double> scaling_s_list{0.5, 1.0, 2.5};
  double c_min = 0.02;
  double scaling_tol = 2e-2;
  int n = 256;
  int oracle_n = 512;
};

ExperimentReport run_inequality_sweep(const InequalityConfig& cfg);

// Worker-pool size: min(GSQG_THREADS if set, hardware concurrency).
int worker_count();

}  // namespace gsqg
