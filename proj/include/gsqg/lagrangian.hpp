#pragma once

#include <vector>

#include "gsqg/grid.hpp"
#include "gsqg/interp.hpp"

namespace gsqg {

// Forward map gamma(x) = x + d_fwd(x) and co-evolved back-to-labels map
// A(x) = x + d_back(x) with A approximating gamma^{-1}.
struct FlowMapPair {
  Grid2D grid;
  VectorField2D d_fwd;
  VectorField2D d_back;
  double t = 0.0;

  static FlowMapPair identity(const Grid2D& g);
};

// sup |gamma(A(x)) - x| over the grid.
double pair_consistency(const FlowMapPair& pair, InterpMode mode = InterpMode::Bicubic);

// det(I + Dd) via spectral derivatives.
ScalarField2D jacobian_det(const VectorField2D& disp);

struct ChartCorrection {
  VectorField2D v;
  ScalarField2D phi;
  VectorField2D xi_displacement;  // v + grad(phi)
  int iterations = 0;
  double residual = 0.0;
  std::vector<double> residual_history;  // H^{s+1} increment per iteration
  double det_deviation = 0.0;            // max |det D(id + xi) - 1|
};

// Volume-preserving chart correction: solve Lap(phi) = P(Dv, D^2 phi) by the
// fixed-point iteration phi_{k+1} = Lap^{-1} P(Dv, D^2 phi_k) from phi_0 = 0,
// stopping when the H^{s+1} increment drops below tol. Requires
// |v|_{H^{2.5}} <= eps_chart (empirical contraction radius).
ChartCorrection volume_correct(const VectorField2D& v, double tol = 1e-12, int max_iter = 30,
                               double s = 2.5, double eps_chart = 0.25);

struct CoupledRates {
  VectorField2D d_fwd_rate;
  VectorField2D d_back_rate;
};

// Rates of the coupled flow-map system:
//   d(gamma)/dt = { curl^{-1} (-Lap)^{beta/2} (theta0 o A) } o gamma
//   dA/dt + (u . grad) A = 0   (displacement form)
// theta0 enters through a prebuilt interpolant.
CoupledRates coupled_rhs(const FlowMapPair& pair, const BicubicInterpolant& theta0,
                         double beta);
CoupledRates coupled_rhs(const FlowMapPair& pair, const ScalarField2D& theta0, double beta);

struct ExpMapResult {
  FlowMapPair pair;
  ScalarField2D theta_t;     // theta0 o A
  double consistency = 0.0;  // sup |gamma o A - id|
  double det_deviation = 0.0;
  double max_speed = 0.0;
};

struct ExpMapOptions {
  int n_steps = 0;  // 0: pick from dt = cfl*dx/max(1, |u0|_inf)
  double cfl = 0.5;
  double blowup_factor = 1e6;
  bool track_det = true;
};

// Time-t endpoint of the geodesic with initial velocity induced by theta0
// (RK4 on the coupled system); theta_t = theta0 o A is the transported scalar.
ExpMapResult exponential_map(const ScalarField2D& theta0, double t, double beta,
                             const ExpMapOptions& opts = {});

struct DexpResult {
  VectorField2D derivative;       // (gamma[theta0+eps w] - gamma[theta0-eps w]) / (2 eps)
  double richardson_error = 0.0;  // |D_eps - D_{eps/2}|_inf
  double measured_order = 0.0;    // FD order estimate from eps-halving
};

// Central finite-difference probe of the directional derivative of the
// time-t flow map with respect to the initial scalar. All probe runs share
// one step count. measure_order adds a third eps level (two more runs).
DexpResult dexp_directional(const ScalarField2D& theta0, const ScalarField2D& w_theta,
                            double t, double beta, double eps,
                            const ExpMapOptions& opts = {}, bool measure_order = false);

}  // namespace gsqg
