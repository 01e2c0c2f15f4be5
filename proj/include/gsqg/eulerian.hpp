#pragma once

#include <vector>

#include "gsqg/grid.hpp"

namespace gsqg {

enum class Formulation { Transport, Velocity };

// Instantaneous state of an Eulerian integration. Exactly one of theta/u is
// active depending on the formulation.
struct SimState {
  double t = 0.0;
  double beta = 0.0;
  Formulation formulation = Formulation::Transport;
  ScalarField2D theta;
  VectorField2D u;

  static SimState transport(ScalarField2D theta0, double beta);
  static SimState velocity(VectorField2D u0, double beta);
};

struct DiagnosticSeries {
  std::vector<double> t, l2, hamiltonian, phi_l2, hs_norm;
};

struct SimTrajectory {
  std::vector<SimState> snapshots;
  DiagnosticSeries diagnostics;
};

// -(u . grad) theta with u = velocity_from_theta(theta, beta), products
// dealiased by the two-thirds rule; zero mode of the result is exactly 0.
ScalarField2D transport_rhs(const ScalarField2D& theta, double beta);

// q(u,u) - (u . grad) u with the commutator form
//   q(u,u) = ([u.grad, -S_{b,2}]; [u.grad, S_{b,1}]) (-Lap)^{(1-b)/2} (R2 u1 - R1 u2),
// every term realized spectrally, products dealiased.
VectorField2D velocity_rhs(const VectorField2D& u, double beta);

// |R1 u1 + R2 u2|_{L2}; vanishes iff div u = 0 spectrally.
double divergence_diagnostic(const VectorField2D& u);

struct IntegrateOptions {
  double diag_s = 2.5;       // Sobolev index of the recorded H^s diagnostic
  double blowup_factor = 1e6;
};

// Classical RK4 with dt = cfl * dx / max(1, |u|_inf), steps shortened to land
// exactly on every requested output time and on T. Diagnostics recorded every
// step. Throws BlowupSuspected when |u|_inf or |theta|_{H^s} exceeds
// blowup_factor times its initial value.
SimTrajectory integrate(const SimState& state0, double T, double cfl,
                        const std::vector<double>& outputs,
                        const IntegrateOptions& opts = {});

}  // namespace gsqg
