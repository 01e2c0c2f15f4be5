#include "gsqg/eulerian.hpp"

#include <algorithm>
#include <cmath>

#include "gsqg/norms.hpp"
#include "gsqg/spectral.hpp"
#include "field_ops.hpp"

namespace gsqg {

SimState SimState::transport(ScalarField2D theta0, double beta) {
  require_mean_zero(theta0, "SimState::transport");
  SimState s;
  s.beta = beta;
  s.formulation = Formulation::Transport;
  s.theta = std::move(theta0);
  return s;
}

SimState SimState::velocity(VectorField2D u0, double beta) {
  require_mean_zero(u0, "SimState::velocity");
  SimState s;
  s.beta = beta;
  s.formulation = Formulation::Velocity;
  s.u = std::move(u0);
  return s;
}

namespace {

// Zero mode of a spectrum set to exactly zero (the advection terms conserve
// the mean analytically; this pins the round-off).
void kill_mean(Spectrum2D& s) { s.coeffs[0] = 0.0; }

ScalarField2D advect(const VectorField2D& u, const Spectrum2D& field_spec) {
  // (u . grad) f with spectral gradient and dealiased product.
  ScalarField2D g1 = to_field(derivative(field_spec, 1));
  ScalarField2D g2 = to_field(derivative(field_spec, 2));
  ScalarField2D out{u.grid};
  out.values.resize(u.grid.size());
  for (std::size_t i = 0; i < out.values.size(); ++i)
    out.values[i] = u.u1[i] * g1.values[i] + u.u2[i] * g2.values[i];
  Spectrum2D s = dealias(to_spectrum(out));
  kill_mean(s);
  return to_field(s);
}

}  // namespace

ScalarField2D transport_rhs(const ScalarField2D& theta, double beta) {
  require_mean_zero(theta, "transport_rhs");
  Spectrum2D ts = dealias(to_spectrum(theta));
  VectorField2D u = velocity_from_theta(ts, beta);
  ScalarField2D adv = advect(u, ts);
  ops::scale(adv, -1.0);
  return adv;
}

VectorField2D velocity_rhs(const VectorField2D& u, double beta) {
  require_mean_zero(u, "velocity_rhs");
  {
    const double dmax = max_abs(divergence(u));
    if (dmax > 1e-8 * std::max(max_abs(u), 1e-300))
      fail(Errc::NotDivergenceFree, "velocity_rhs requires div u = 0 to 1e-8");
  }
  const Grid2D& g = u.grid;
  Spectrum2D s1 = dealias(to_spectrum(ops::component(u, 1)));
  Spectrum2D s2 = dealias(to_spectrum(ops::component(u, 2)));
  VectorField2D ud(g);
  ud.u1 = to_field(s1).values;
  ud.u2 = to_field(s2).values;

  // theta_u = (-Lap)^{(1-beta)/2}(R2 u1 - R1 u2) = i |k|^{-beta} (k2 s1 - k1 s2)
  Spectrum2D theta_u(g);
  const int n = g.n;
  const double ks = g.k_scale();
  for (int a1 = 0; a1 < n; ++a1) {
    const double k1 = ks * g.wavenumber(a1);
    for (int a2 = 0; a2 < n; ++a2) {
      const double k2 = ks * g.wavenumber(a2);
      const double kk = k1 * k1 + k2 * k2;
      const std::size_t idx = static_cast<std::size_t>(a1) * n + a2;
      if (kk == 0.0) {
        theta_u.coeffs[idx] = 0.0;
        continue;
      }
      theta_u.coeffs[idx] = std::complex<double>(0.0, std::pow(kk, -0.5 * beta)) *
                            (k2 * s1.coeffs[idx] - k1 * s2.coeffs[idx]);
    }
  }

  auto s_beta_spec = [&](const Spectrum2D& s, int axis) {
    return apply_multiplier(s, [beta, axis](double k1, double k2) {
      const double kk = k1 * k1 + k2 * k2;
      if (kk == 0.0) return std::complex<double>(0.0, 0.0);
      return std::complex<double>(0.0, (axis == 1 ? k1 : k2) * std::pow(kk, 0.5 * beta - 1.0));
    });
  };

  // commutator [u.grad, S]g = u.grad(S g) - S(u.grad g), all products dealiased
  ScalarField2D adv_theta = advect(ud, theta_u);
  Spectrum2D adv_theta_spec = to_spectrum(adv_theta);

  Spectrum2D St2 = s_beta_spec(theta_u, 2);
  Spectrum2D St1 = s_beta_spec(theta_u, 1);
  ScalarField2D u_adv_St2 = advect(ud, St2);
  ScalarField2D u_adv_St1 = advect(ud, St1);
  ScalarField2D S2_adv = to_field(s_beta_spec(adv_theta_spec, 2));
  ScalarField2D S1_adv = to_field(s_beta_spec(adv_theta_spec, 1));

  ScalarField2D adv_u1 = advect(ud, s1);
  ScalarField2D adv_u2 = advect(ud, s2);

  // rhs1 = -u.grad u1 - [u.grad, S_{b,2}] theta_u
  // rhs2 = -u.grad u2 + [u.grad, S_{b,1}] theta_u
  VectorField2D rhs(g);
  for (std::size_t i = 0; i < rhs.u1.size(); ++i) {
    rhs.u1[i] = -adv_u1.values[i] - (u_adv_St2.values[i] - S2_adv.values[i]);
    rhs.u2[i] = -adv_u2.values[i] + (u_adv_St1.values[i] - S1_adv.values[i]);
  }
  Spectrum2D r1 = dealias(to_spectrum(ops::component(rhs, 1)));
  Spectrum2D r2 = dealias(to_spectrum(ops::component(rhs, 2)));
  kill_mean(r1);
  kill_mean(r2);
  rhs.u1 = to_field(r1).values;
  rhs.u2 = to_field(r2).values;
  return rhs;
}

double divergence_diagnostic(const VectorField2D& u) {
  require_mean_zero(u, "divergence_diagnostic");
  ScalarField2D phi = riesz_transform(ops::component(u, 1), 1);
  ops::axpy(phi, 1.0, riesz_transform(ops::component(u, 2), 2));
  return l2_norm(phi);
}

namespace {

struct StepDiag {
  double umax = 0.0;
  double l2 = 0.0, ham = 0.0, phi = 0.0, hs = 0.0;
};

StepDiag diagnose(const SimState& st, double diag_s) {
  StepDiag d;
  if (st.formulation == Formulation::Transport) {
    VectorField2D u = velocity_from_theta(st.theta, st.beta);
    d.umax = max_speed(u);
    d.l2 = l2_norm(st.theta);
    d.ham = hamiltonian(st.theta, st.beta);
    d.phi = divergence_diagnostic(u);
    d.hs = sobolev_norm(st.theta, diag_s, false);
  } else {
    ScalarField2D theta = theta_from_velocity(st.u, st.beta);
    d.umax = max_speed(st.u);
    d.l2 = l2_norm(theta);
    d.ham = hamiltonian(theta, st.beta);
    d.phi = divergence_diagnostic(st.u);
    d.hs = sobolev_norm(theta, diag_s, false);
  }
  return d;
}

}  // namespace

SimTrajectory integrate(const SimState& state0, double T, double cfl,
                        const std::vector<double>& outputs, const IntegrateOptions& opts) {
  if (!(T > 0.0)) fail(Errc::InvalidArgument, "T must be positive");
  if (!(cfl > 0.0)) fail(Errc::InvalidArgument, "cfl must be positive");

  SimState st = state0;
  // Keep the state inside the dealiased band from the start.
  if (st.formulation == Formulation::Transport) {
    st.theta = dealias(st.theta);
  } else {
    st.u.u1 = dealias(ops::component(st.u, 1)).values;
    st.u.u2 = dealias(ops::component(st.u, 2)).values;
  }

  const Grid2D& g = st.formulation == Formulation::Transport ? st.theta.grid : st.u.grid;
  const double dx = g.dx();

  std::vector<double> stops;
  for (double s : outputs)
    if (s > 1e-14 && s <= T + 1e-13) stops.push_back(std::min(s, T));
  stops.push_back(T);
  std::sort(stops.begin(), stops.end());
  stops.erase(std::unique(stops.begin(), stops.end(),
                          [](double a, double b) { return std::abs(a - b) < 1e-13; }),
              stops.end());

  SimTrajectory traj;
  StepDiag d0 = diagnose(st, opts.diag_s);
  const double umax0 = std::max(d0.umax, 1e-300);
  const double hs0 = std::max(d0.hs, 1e-300);

  auto record = [&](double t, const StepDiag& d) {
    traj.diagnostics.t.push_back(t);
    traj.diagnostics.l2.push_back(d.l2);
    traj.diagnostics.hamiltonian.push_back(d.ham);
    traj.diagnostics.phi_l2.push_back(d.phi);
    traj.diagnostics.hs_norm.push_back(d.hs);
  };
  record(0.0, d0);

  double t = 0.0;
  std::size_t next_stop = 0;
  for (double s : outputs) {
    if (std::abs(s) <= 1e-14) {
      st.t = 0.0;
      traj.snapshots.push_back(st);
      break;
    }
  }

  StepDiag d = d0;
  while (t < T - 1e-13) {
    double dt = cfl * dx / std::max(1.0, d.umax);
    // Land exactly on the next requested output time.
    if (next_stop < stops.size() && t + dt > stops[next_stop] - 1e-13)
      dt = stops[next_stop] - t;

    if (st.formulation == Formulation::Transport) {
      const double beta = st.beta;
      ScalarField2D k1 = transport_rhs(st.theta, beta);
      ScalarField2D k2 = transport_rhs(ops::sum(st.theta, 0.5 * dt, k1), beta);
      ScalarField2D k3 = transport_rhs(ops::sum(st.theta, 0.5 * dt, k2), beta);
      ScalarField2D k4 = transport_rhs(ops::sum(st.theta, dt, k3), beta);
      ops::axpy(st.theta, dt / 6.0, k1);
      ops::axpy(st.theta, dt / 3.0, k2);
      ops::axpy(st.theta, dt / 3.0, k3);
      ops::axpy(st.theta, dt / 6.0, k4);
    } else {
      const double beta = st.beta;
      VectorField2D k1 = velocity_rhs(st.u, beta);
      VectorField2D k2 = velocity_rhs(ops::sum(st.u, 0.5 * dt, k1), beta);
      VectorField2D k3 = velocity_rhs(ops::sum(st.u, 0.5 * dt, k2), beta);
      VectorField2D k4 = velocity_rhs(ops::sum(st.u, dt, k3), beta);
      ops::axpy(st.u, dt / 6.0, k1);
      ops::axpy(st.u, dt / 3.0, k2);
      ops::axpy(st.u, dt / 3.0, k3);
      ops::axpy(st.u, dt / 6.0, k4);
    }
    t += dt;
    st.t = t;

    d = diagnose(st, opts.diag_s);
    record(t, d);
    if (d.umax > opts.blowup_factor * umax0 || d.hs > opts.blowup_factor * hs0)
      fail(Errc::BlowupSuspected, "norm grew past the blowup guard at t = " + std::to_string(t));

    if (next_stop < stops.size() && std::abs(t - stops[next_stop]) <= 1e-12) {
      st.t = stops[next_stop];  // exact stamp
      traj.snapshots.push_back(st);
      ++next_stop;
    }
  }
  return traj;
}

}  // namespace gsqg
