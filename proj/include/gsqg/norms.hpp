#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "gsqg/grid.hpp"

namespace gsqg {

// Discrete Sobolev norm: sqrt( sum_k w(k)^s |fhat(k)|^2 ) with w = |k|^2
// (homogeneous, zero mode excluded) or 1 + |k|^2. Valid for any real s.
double sobolev_norm(const ScalarField2D& f, double s, bool homogeneous);
double sobolev_norm(const Spectrum2D& f, double s, bool homogeneous);

// Componentwise combination sqrt(|u1|_s^2 + |u2|_s^2).
double sobolev_norm(const VectorField2D& u, double s, bool homogeneous);

// L2 norm under the domain-averaged measure (equals RMS).
double l2_norm(const ScalarField2D& f);

// Metric inner product at the identity: integral of phi_v (-Lap)^{(2-beta)/2} phi_w
// d(mu) with v = perp-grad phi_v and the normalized measure mu. Inputs must be
// mean-free and divergence-free (checked to 1e-8 relative).
double beta_inner_product(const VectorField2D& v, const VectorField2D& w, double beta);

// (1/2) integral of theta (-Lap)^{-1+beta/2} theta d(mu); equals
// beta_inner_product(u, u)/2 for u = velocity_from_theta(theta, beta).
double hamiltonian(const ScalarField2D& theta, double beta);

// Pair sampling plan for the Holder seminorm lower bound: exhaustive over
// grid-point pairs inside `window` of each focus point, plus n_random random
// grid pairs drawn from a seeded generator.
struct SamplingPlan {
  std::vector<Point2> focus_points;
  double window = 0.5;
  std::size_t n_random = 100000;
  std::uint64_t seed = 1;
};

// Sampled sup of |f(x)-f(y)| / dist(x,y)^alpha over the plan's pairs
// (periodic distance). A certified lower bound of the true seminorm.
double holder_seminorm(const ScalarField2D& f, double alpha, const SamplingPlan& plan);

// Little-Holder diagnostic at x0: pairs (h, omega(h)/h^alpha) with
// omega(h) = max over grid points within distance h of x0 of |f(y)-f(x0)|,
// h in {dx, 2dx, 4dx, ...}, returned with h decreasing.
std::vector<std::pair<double, double>> little_holder_profile(const ScalarField2D& f,
                                                             double alpha, const Point2& x0);

// |f+g|_{H^s}^2 / (|f|_{H^s}^2 + |g|_{H^s}^2) for fields with disjoint
// numerical supports (threshold 1e-14 * max).
double disjoint_support_ratio(const ScalarField2D& f, const ScalarField2D& g, double s);

// Smooth compactly supported radial profile exp(1 - 1/(1 - (r/radius)^2)).
struct BumpProfile {
  double radius = 0.5;
  double amplitude = 1.0;
  double operator()(double r) const;
};

// Measured |f^lambda|^2_{Hdot^s} / |f|^2_{Hdot^s} divided by the exact scaling
// factor lambda^{d - 2s}, with f^lambda(x) = f(x/lambda); ideal value 1.
// lambda must be in {1, 2, 4}; d is the dimension (1 or 2); n the resolution
// of the auxiliary grid used for the measurement.
double scaling_ratio(const BumpProfile& f, double lambda, double s, int d, int n = 1024);

}  // namespace gsqg
