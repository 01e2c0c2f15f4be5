#include "gsqg/lagrangian.hpp"

#include <cmath>

#include "gsqg/norms.hpp"
#include "gsqg/spectral.hpp"
#include "field_ops.hpp"

namespace gsqg {

FlowMapPair FlowMapPair::identity(const Grid2D& g) {
  FlowMapPair p;
  p.grid = g;
  p.d_fwd = VectorField2D(g);
  p.d_back = VectorField2D(g);
  p.t = 0.0;
  return p;
}

double pair_consistency(const FlowMapPair& pair, InterpMode mode) {
  // gamma(A(x)) - x = b(x) + d_fwd(x + b(x))
  VectorField2D comp = compose(pair.d_fwd, pair.d_back, mode);
  double sup = 0.0;
  for (std::size_t i = 0; i < comp.u1.size(); ++i) {
    const double e1 = pair.d_back.u1[i] + comp.u1[i];
    const double e2 = pair.d_back.u2[i] + comp.u2[i];
    sup = std::max(sup, std::hypot(e1, e2));
  }
  return sup;
}

ScalarField2D jacobian_det(const VectorField2D& disp) {
  ScalarField2D d1 = ops::component(disp, 1);
  ScalarField2D d2 = ops::component(disp, 2);
  Spectrum2D s1 = to_spectrum(d1);
  Spectrum2D s2 = to_spectrum(d2);
  ScalarField2D a11 = to_field(derivative(s1, 1));
  ScalarField2D a12 = to_field(derivative(s1, 2));
  ScalarField2D a21 = to_field(derivative(s2, 1));
  ScalarField2D a22 = to_field(derivative(s2, 2));
  ScalarField2D det{disp.grid};
  det.values.resize(disp.grid.size());
  for (std::size_t i = 0; i < det.values.size(); ++i) {
    det.values[i] = (1.0 + a11.values[i]) * (1.0 + a22.values[i]) -
                    a12.values[i] * a21.values[i];
  }
  return det;
}

ChartCorrection volume_correct(const VectorField2D& v, double tol, int max_iter, double s,
                               double eps_chart) {
  const double vnorm = sobolev_norm(v, 2.5, false);
  if (vnorm > eps_chart)
    fail(Errc::InvalidArgument,
         "volume_correct requires |v|_{H^2.5} <= " + std::to_string(eps_chart));

  const Grid2D& g = v.grid;
  Spectrum2D sv1 = to_spectrum(ops::component(v, 1));
  Spectrum2D sv2 = to_spectrum(ops::component(v, 2));
  const ScalarField2D v11 = to_field(derivative(sv1, 1));
  const ScalarField2D v12 = to_field(derivative(sv1, 2));
  const ScalarField2D v21 = to_field(derivative(sv2, 1));
  const ScalarField2D v22 = to_field(derivative(sv2, 2));

  Spectrum2D phi(g);  // spectral iterate, starts at 0
  std::vector<double> history;
  double residual = 0.0;
  int iter = 0;
  int bad_streak = 0;
  double prev_residual = 0.0;

  for (iter = 1; iter <= max_iter; ++iter) {
    ScalarField2D p11 = to_field(apply_multiplier(phi, [](double k1, double) {
      return std::complex<double>(-k1 * k1, 0.0);
    }));
    ScalarField2D p22 = to_field(apply_multiplier(phi, [](double, double k2) {
      return std::complex<double>(-k2 * k2, 0.0);
    }));
    ScalarField2D p12 = to_field(apply_multiplier(phi, [](double k1, double k2) {
      return std::complex<double>(-k1 * k2, 0.0);
    }));

    // P(Dv, D^2 phi), the degree-2 determinant expansion
    ScalarField2D P{g};
    P.values.resize(g.size());
    for (std::size_t i = 0; i < P.values.size(); ++i) {
      const double a = v11.values[i], b = v12.values[i];
      const double c = v21.values[i], d = v22.values[i];
      const double f11 = p11.values[i], f22 = p22.values[i], f12 = p12.values[i];
      P.values[i] = -(a + d + a * d + a * f22 + d * f11 + f11 * f22) + c * b + c * f12 +
                    b * f12 + f12 * f12;
    }

    // phi_{k+1} = Lap^{-1} P  (zero mode dropped)
    Spectrum2D ps = to_spectrum(P);
    Spectrum2D next(g);
    const int n = g.n;
    const double ks = g.k_scale();
    for (int a1 = 0; a1 < n; ++a1) {
      const double k1 = ks * g.wavenumber(a1);
      for (int a2 = 0; a2 < n; ++a2) {
        const double k2 = ks * g.wavenumber(a2);
        const double kk = k1 * k1 + k2 * k2;
        const std::size_t idx = static_cast<std::size_t>(a1) * n + a2;
        next.coeffs[idx] = kk == 0.0 ? 0.0 : -ps.coeffs[idx] / kk;
      }
    }

    Spectrum2D diff = next;
    for (std::size_t i = 0; i < diff.coeffs.size(); ++i) diff.coeffs[i] -= phi.coeffs[i];
    residual = sobolev_norm(diff, s + 1.0, false);
    history.push_back(residual);
    phi = std::move(next);

    if (!std::isfinite(residual))
      fail(Errc::NoContraction, "fixed-point iterate diverged");
    if (residual < tol) break;
    if (iter > 1 && residual >= prev_residual) {
      if (++bad_streak >= 5)
        fail(Errc::NoContraction, "residual failed to decrease for 5 iterations");
    } else {
      bad_streak = 0;
    }
    prev_residual = residual;
  }
  if (residual >= tol && iter > max_iter)
    fail(Errc::IterLimit, "no convergence within max_iter iterations");

  ChartCorrection out;
  out.v = v;
  out.phi = to_field(phi);
  out.xi_displacement = v;
  ops::axpy(out.xi_displacement, 1.0, [&] {
    VectorField2D grad(g);
    grad.u1 = to_field(derivative(phi, 1)).values;
    grad.u2 = to_field(derivative(phi, 2)).values;
    return grad;
  }());
  out.iterations = iter;
  out.residual = residual;
  out.residual_history = std::move(history);
  ScalarField2D det = jacobian_det(out.xi_displacement);
  double dev = 0.0;
  for (double d : det.values) dev = std::max(dev, std::abs(d - 1.0));
  out.det_deviation = dev;
  return out;
}

namespace {

VectorField2D velocity_from_composed_theta(const ScalarField2D& theta_comp, double beta) {
  // theta0 o A keeps its mean only up to interpolation error; the conserved
  // mean is tracked by the caller, the velocity law sees the mean-free part.
  ScalarField2D adj = theta_comp;
  ops::subtract_mean(adj);
  return velocity_from_theta(dealias(to_spectrum(adj)), beta);
}

}  // namespace

CoupledRates coupled_rhs(const FlowMapPair& pair, const BicubicInterpolant& theta0,
                         double beta) {
  const Grid2D& g = pair.grid;
  ScalarField2D theta_comp = compose(theta0, pair.d_back);
  VectorField2D u = velocity_from_composed_theta(theta_comp, beta);

  CoupledRates rates;
  rates.d_fwd_rate = compose(u, pair.d_fwd);

  // dA/dt + (u.grad)A = 0, displacement form: db_i/dt = -(u.grad) b_i - u_i
  Spectrum2D b1 = to_spectrum(ops::component(pair.d_back, 1));
  Spectrum2D b2 = to_spectrum(ops::component(pair.d_back, 2));
  ScalarField2D g11 = to_field(derivative(b1, 1));
  ScalarField2D g12 = to_field(derivative(b1, 2));
  ScalarField2D g21 = to_field(derivative(b2, 1));
  ScalarField2D g22 = to_field(derivative(b2, 2));

  ScalarField2D adv1{g}, adv2{g};
  adv1.values.resize(g.size());
  adv2.values.resize(g.size());
  for (std::size_t i = 0; i < g.size(); ++i) {
    adv1.values[i] = u.u1[i] * g11.values[i] + u.u2[i] * g12.values[i];
    adv2.values[i] = u.u1[i] * g21.values[i] + u.u2[i] * g22.values[i];
  }
  adv1 = to_field(dealias(to_spectrum(adv1)));
  adv2 = to_field(dealias(to_spectrum(adv2)));

  rates.d_back_rate = VectorField2D(g);
  for (std::size_t i = 0; i < g.size(); ++i) {
    rates.d_back_rate.u1[i] = -adv1.values[i] - u.u1[i];
    rates.d_back_rate.u2[i] = -adv2.values[i] - u.u2[i];
  }
  return rates;
}

CoupledRates coupled_rhs(const FlowMapPair& pair, const ScalarField2D& theta0, double beta) {
  require_mean_zero(theta0, "coupled_rhs");
  const double tol = 10.0 * pair.grid.dx();
  if (pair.t > 0.0 && pair_consistency(pair) > tol)
    fail(Errc::InconsistentPair, "gamma o A deviates from the identity by more than 10 dx");
  return coupled_rhs(pair, BicubicInterpolant(theta0), beta);
}

ExpMapResult exponential_map(const ScalarField2D& theta0, double t, double beta,
                             const ExpMapOptions& opts) {
  require_mean_zero(theta0, "exponential_map");
  const Grid2D& g = theta0.grid;

  int n_steps = opts.n_steps;
  VectorField2D u0 = velocity_from_theta(dealias(to_spectrum(theta0)), beta);
  if (n_steps <= 0) {
    const double dt = opts.cfl * g.dx() / std::max(1.0, max_speed(u0));
    n_steps = std::max(1, static_cast<int>(std::ceil(t / dt)));
  }

  BicubicInterpolant theta0_interp(theta0);
  FlowMapPair pair = FlowMapPair::identity(g);
  const double dt = t / n_steps;
  const double u0max = std::max(max_speed(u0), 1e-300);

  ExpMapResult res;
  res.max_speed = u0max;

  for (int step = 0; step < n_steps; ++step) {
    CoupledRates k1 = coupled_rhs(pair, theta0_interp, beta);

    FlowMapPair mid = pair;
    mid.d_fwd = ops::sum(pair.d_fwd, 0.5 * dt, k1.d_fwd_rate);
    mid.d_back = ops::sum(pair.d_back, 0.5 * dt, k1.d_back_rate);
    CoupledRates k2 = coupled_rhs(mid, theta0_interp, beta);

    mid.d_fwd = ops::sum(pair.d_fwd, 0.5 * dt, k2.d_fwd_rate);
    mid.d_back = ops::sum(pair.d_back, 0.5 * dt, k2.d_back_rate);
    CoupledRates k3 = coupled_rhs(mid, theta0_interp, beta);

    mid.d_fwd = ops::sum(pair.d_fwd, dt, k3.d_fwd_rate);
    mid.d_back = ops::sum(pair.d_back, dt, k3.d_back_rate);
    CoupledRates k4 = coupled_rhs(mid, theta0_interp, beta);

    ops::axpy(pair.d_fwd, dt / 6.0, k1.d_fwd_rate);
    ops::axpy(pair.d_fwd, dt / 3.0, k2.d_fwd_rate);
    ops::axpy(pair.d_fwd, dt / 3.0, k3.d_fwd_rate);
    ops::axpy(pair.d_fwd, dt / 6.0, k4.d_fwd_rate);
    ops::axpy(pair.d_back, dt / 6.0, k1.d_back_rate);
    ops::axpy(pair.d_back, dt / 3.0, k2.d_back_rate);
    ops::axpy(pair.d_back, dt / 3.0, k3.d_back_rate);
    ops::axpy(pair.d_back, dt / 6.0, k4.d_back_rate);
    pair.t += dt;

    const double rate_max = std::max(max_speed(k1.d_fwd_rate), 1e-300);
    if (rate_max > opts.blowup_factor * u0max)
      fail(Errc::BlowupSuspected, "flow speed grew past the blowup guard");
    res.max_speed = std::max(res.max_speed, rate_max);

    if (opts.track_det && (step % 16 == 15)) {
      ScalarField2D det = jacobian_det(pair.d_fwd);
      for (double d : det.values)
        res.det_deviation = std::max(res.det_deviation, std::abs(d - 1.0));
    }
  }
  pair.t = t;

  res.consistency = pair_consistency(pair);
  if (res.consistency > 0.1 * g.dx() * n_steps)
    fail(Errc::ConsistencyLost, "back-to-labels map inconsistent with the forward map");
  if (opts.track_det) {
    ScalarField2D det = jacobian_det(pair.d_fwd);
    for (double d : det.values)
      res.det_deviation = std::max(res.det_deviation, std::abs(d - 1.0));
  }
  res.theta_t = compose(theta0_interp, pair.d_back);
  res.pair = std::move(pair);
  return res;
}

DexpResult dexp_directional(const ScalarField2D& theta0, const ScalarField2D& w_theta,
                            double t, double beta, double eps, const ExpMapOptions& opts,
                            bool measure_order) {
  if (!(eps >= 1e-4 && eps <= 1e-1))
    fail(Errc::InvalidArgument, "eps must lie in [1e-4, 1e-1]");
  require_mean_zero(theta0, "dexp_directional");
  require_mean_zero(w_theta, "dexp_directional");

  // All probe runs share the step count so time-discretization error cancels.
  ExpMapOptions run_opts = opts;
  if (run_opts.n_steps <= 0) {
    VectorField2D u0 = velocity_from_theta(dealias(to_spectrum(theta0)), beta);
    VectorField2D uw = velocity_from_theta(dealias(to_spectrum(w_theta)), beta);
    const double umax = max_speed(u0) + (eps + 1e-2) * max_speed(uw);
    const double dt = run_opts.cfl * theta0.grid.dx() / std::max(1.0, umax);
    run_opts.n_steps = std::max(1, static_cast<int>(std::ceil(t / dt)));
  }
  run_opts.track_det = false;

  auto probe = [&](double e) {
    ScalarField2D plus = ops::sum(theta0, e, w_theta);
    ScalarField2D minus = ops::sum(theta0, -e, w_theta);
    ExpMapResult rp = exponential_map(plus, t, beta, run_opts);
    ExpMapResult rm = exponential_map(minus, t, beta, run_opts);
    VectorField2D diff = rp.pair.d_fwd;
    ops::axpy(diff, -1.0, rm.pair.d_fwd);
    ops::scale(diff, 1.0 / (2.0 * e));
    return diff;
  };

  DexpResult out;
  out.derivative = probe(eps);
  VectorField2D half = probe(0.5 * eps);

  VectorField2D delta = out.derivative;
  ops::axpy(delta, -1.0, half);
  out.richardson_error = max_abs(delta);

  if (!measure_order) return out;
  VectorField2D quarter = probe(0.25 * eps);
  VectorField2D delta2 = half;
  ops::axpy(delta2, -1.0, quarter);
  const double d2 = max_abs(delta2);
  if (d2 > 0.0 && out.richardson_error > 0.0)
    out.measured_order = std::log2(out.richardson_error / d2);
  return out;
}

}  // namespace gsqg
