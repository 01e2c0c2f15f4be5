#pragma once

// Internal field arithmetic helpers shared by the integrators.

#include "gsqg/grid.hpp"

namespace gsqg::ops {

inline void axpy(ScalarField2D& y, double a, const ScalarField2D& x) {
  for (std::size_t i = 0; i < y.values.size(); ++i) y.values[i] += a * x.values[i];
}

inline void axpy(VectorField2D& y, double a, const VectorField2D& x) {
  for (std::size_t i = 0; i < y.u1.size(); ++i) {
    y.u1[i] += a * x.u1[i];
    y.u2[i] += a * x.u2[i];
  }
}

inline ScalarField2D sum(const ScalarField2D& a, double c, const ScalarField2D& b) {
  ScalarField2D out = a;
  axpy(out, c, b);
  return out;
}

inline VectorField2D sum(const VectorField2D& a, double c, const VectorField2D& b) {
  VectorField2D out = a;
  axpy(out, c, b);
  return out;
}

inline void scale(ScalarField2D& f, double c) {
  for (double& v : f.values) v *= c;
}

inline void scale(VectorField2D& f, double c) {
  for (double& v : f.u1) v *= c;
  for (double& v : f.u2) v *= c;
}

inline ScalarField2D product(const ScalarField2D& a, const ScalarField2D& b) {
  ScalarField2D out = a;
  for (std::size_t i = 0; i < out.values.size(); ++i) out.values[i] *= b.values[i];
  return out;
}

inline ScalarField2D component(const VectorField2D& v, int axis) {
  ScalarField2D out{v.grid};
  out.values = axis == 1 ? v.u1 : v.u2;
  return out;
}

inline void subtract_mean(ScalarField2D& f) {
  const double m = mean(f);
  for (double& v : f.values) v -= m;
}

}  // namespace gsqg::ops
