#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "gsqg/config.hpp"
#include "gsqg/eulerian.hpp"
#include "gsqg/experiments.hpp"
#include "gsqg/field_io.hpp"
#include "gsqg/lagrangian.hpp"
#include "gsqg/norms.hpp"
#include "gsqg/spectral.hpp"

namespace py = pybind11;
using namespace gsqg;

namespace {

ScalarField2D scalar_from_array(py::array_t<double, py::array::c_style | py::array::forcecast> a,
                                double length) {
  if (a.ndim() != 2 || a.shape(0) != a.shape(1))
    throw py::value_error("expected a square 2D array");
  const int n = static_cast<int>(a.shape(0));
  ScalarField2D f(Grid2D::make(n, length));
  std::copy(a.data(), a.data() + f.values.size(), f.values.begin());
  return f;
}

py::array_t<double> to_array(const ScalarField2D& f) {
  py::array_t<double> out({f.grid.n, f.grid.n});
  std::copy(f.values.begin(), f.values.end(), out.mutable_data());
  return out;
}

py::array_t<double> to_array(const std::vector<double>& v, int n) {
  py::array_t<double> out({n, n});
  std::copy(v.begin(), v.end(), out.mutable_data());
  return out;
}

VectorField2D vector_from_arrays(py::array_t<double, py::array::c_style | py::array::forcecast> a1,
                                 py::array_t<double, py::array::c_style | py::array::forcecast> a2,
                                 double length) {
  ScalarField2D c1 = scalar_from_array(a1, length);
  ScalarField2D c2 = scalar_from_array(a2, length);
  if (!(c1.grid == c2.grid)) throw py::value_error("component shapes differ");
  VectorField2D v(c1.grid);
  v.u1 = std::move(c1.values);
  v.u2 = std::move(c2.values);
  return v;
}

py::dict report_to_dict(const ExperimentReport& rep) {
  py::dict out;
  out["kind"] = rep.kind;
  out["pass"] = rep.pass;
  py::module_ json = py::module_::import("json");
  out["body"] = json.attr("loads")(rep.body.dump());
  out["csv"] = rep.csv;
  return out;
}

}  // namespace

PYBIND11_MODULE(_gsqg, m) {
  m.doc() = "pseudo-spectral generalized SQG laboratory";

  py::register_exception<Error>(m, "GsqgError");

  // --- spectral operators -----------------------------------------------
  m.def(
      "fractional_laplacian",
      [](py::array_t<double> f, double sigma, double length) {
        return to_array(fractional_laplacian(scalar_from_array(f, length), sigma));
      },
      py::arg("f"), py::arg("sigma"), py::arg("length") = two_pi);

  m.def(
      "riesz_transform",
      [](py::array_t<double> f, int axis, double length) {
        return to_array(riesz_transform(scalar_from_array(f, length), axis));
      },
      py::arg("f"), py::arg("axis"), py::arg("length") = two_pi);

  m.def(
      "velocity_from_theta",
      [](py::array_t<double> theta, double beta, double length) {
        VectorField2D u = velocity_from_theta(scalar_from_array(theta, length), beta);
        return py::make_tuple(to_array(u.u1, u.grid.n), to_array(u.u2, u.grid.n));
      },
      py::arg("theta"), py::arg("beta"), py::arg("length") = two_pi);

  m.def(
      "theta_from_velocity",
      [](py::array_t<double> u1, py::array_t<double> u2, double beta, double length) {
        return to_array(theta_from_velocity(vector_from_arrays(u1, u2, length), beta));
      },
      py::arg("u1"), py::arg("u2"), py::arg("beta"), py::arg("length") = two_pi);

  m.def(
      "dealias",
      [](py::array_t<double> f, double length) {
        return to_array(dealias(scalar_from_array(f, length)));
      },
      py::arg("f"), py::arg("length") = two_pi);

  // --- norms ---------------------------------------------------------------
  m.def(
      "sobolev_norm",
      [](py::array_t<double> f, double s, bool homogeneous, double length) {
        return sobolev_norm(scalar_from_array(f, length), s, homogeneous);
      },
      py::arg("f"), py::arg("s"), py::arg("homogeneous") = false,
      py::arg("length") = two_pi);

  m.def(
      "hamiltonian",
      [](py::array_t<double> theta, double beta, double length) {
        return hamiltonian(scalar_from_array(theta, length), beta);
      },
      py::arg("theta"), py::arg("beta"), py::arg("length") = two_pi);

  m.def(
      "holder_seminorm",
      [](py::array_t<double> f, double alpha, std::vector<std::array<double, 2>> focus,
         double window, std::size_t n_random, std::uint64_t seed, double length) {
        SamplingPlan plan;
        for (const auto& p : focus) plan.focus_points.push_back({p[0], p[1]});
        plan.window = window;
        plan.n_random = n_random;
        plan.seed = seed;
        return holder_seminorm(scalar_from_array(f, length), alpha, plan);
      },
      py::arg("f"), py::arg("alpha"), py::arg("focus") = std::vector<std::array<double, 2>>{},
      py::arg("window") = 0.5, py::arg("n_random") = 100000, py::arg("seed") = 1,
      py::arg("length") = two_pi);

  // --- dynamics --------------------------------------------------------------
  m.def(
      "transport_rhs",
      [](py::array_t<double> theta, double beta, double length) {
        return to_array(transport_rhs(scalar_from_array(theta, length), beta));
      },
      py::arg("theta"), py::arg("beta"), py::arg("length") = two_pi);

  m.def(
      "integrate_transport",
      [](py::array_t<double> theta0, double beta, double T, double cfl, double length) {
        SimState st = SimState::transport(scalar_from_array(theta0, length), beta);
        SimTrajectory traj = integrate(st, T, cfl, {T});
        py::dict diag;
        diag["t"] = traj.diagnostics.t;
        diag["l2"] = traj.diagnostics.l2;
        diag["hamiltonian"] = traj.diagnostics.hamiltonian;
        diag["phi_l2"] = traj.diagnostics.phi_l2;
        diag["hs_norm"] = traj.diagnostics.hs_norm;
        return py::make_tuple(to_array(traj.snapshots.back().theta), diag);
      },
      py::arg("theta0"), py::arg("beta"), py::arg("T"), py::arg("cfl") = 0.5,
      py::arg("length") = two_pi);

  m.def(
      "exponential_map",
      [](py::array_t<double> theta0, double t, double beta, int n_steps, double length) {
        ExpMapOptions opts;
        opts.n_steps = n_steps;
        ExpMapResult res = exponential_map(scalar_from_array(theta0, length), t, beta, opts);
        py::dict out;
        const int n = res.pair.grid.n;
        out["theta_t"] = to_array(res.theta_t);
        out["d_fwd"] = py::make_tuple(to_array(res.pair.d_fwd.u1, n),
                                      to_array(res.pair.d_fwd.u2, n));
        out["d_back"] = py::make_tuple(to_array(res.pair.d_back.u1, n),
                                       to_array(res.pair.d_back.u2, n));
        out["consistency"] = res.consistency;
        out["det_deviation"] = res.det_deviation;
        return out;
      },
      py::arg("theta0"), py::arg("t"), py::arg("beta"), py::arg("n_steps") = 0,
      py::arg("length") = two_pi);

  m.def(
      "volume_correct",
      [](py::array_t<double> v1, py::array_t<double> v2, double tol, int max_iter,
         double length) {
        ChartCorrection c = volume_correct(vector_from_arrays(v1, v2, length), tol, max_iter);
        py::dict out;
        out["phi"] = to_array(c.phi);
        out["iterations"] = c.iterations;
        out["residual"] = c.residual;
        out["det_deviation"] = c.det_deviation;
        return out;
      },
      py::arg("v1"), py::arg("v2"), py::arg("tol") = 1e-12, py::arg("max_iter") = 30,
      py::arg("length") = two_pi);

  m.def(
      "jacobian_det",
      [](py::array_t<double> d1, py::array_t<double> d2, double length) {
        return to_array(jacobian_det(vector_from_arrays(d1, d2, length)));
      },
      py::arg("d1"), py::arg("d2"), py::arg("length") = two_pi);

  // --- experiments ------------------------------------------------------------
  m.def(
      "run_holder_boost",
      [](double alpha, int n_eval, std::uint64_t seed) {
        HolderConfig cfg = HolderConfig::defaults();
        cfg.alpha = alpha;
        cfg.n_eval = n_eval;
        cfg.seed = seed;
        return report_to_dict(run_holder_boost(cfg));
      },
      py::arg("alpha") = 0.6, py::arg("n_eval") = 512, py::arg("seed") = 1);

  m.def(
      "run_inequality_sweep",
      [](int n, int oracle_n) {
        InequalityConfig cfg;
        cfg.n = n;
        cfg.oracle_n = oracle_n;
        return report_to_dict(run_inequality_sweep(cfg));
      },
      py::arg("n") = 256, py::arg("oracle_n") = 512);

  m.def(
      "run_nonuniform",
      [](int n, double beta, double T, std::vector<int> n_list, double target,
         std::uint64_t seed) {
        NonuniformConfig cfg;
        cfg.n = n;
        cfg.beta = beta;
        cfg.T = T;
        cfg.n_list = std::move(n_list);
        cfg.target_displacement = target;
        cfg.seed = seed;
        return report_to_dict(run_nonuniform(cfg));
      },
      py::arg("n") = 256, py::arg("beta") = 0.5, py::arg("T") = 1.0,
      py::arg("n_list") = std::vector<int>{2, 4, 8, 16}, py::arg("target") = 4.5,
      py::arg("seed") = 1);

  // --- data helpers --------------------------------------------------------
  m.def(
      "taylor_green",
      [](int n, double amplitude) {
        const Grid2D g = Grid2D::make(n);
        ScalarField2D f(g);
        const double dx = g.dx();
        for (int i = 0; i < n; ++i)
          for (int j = 0; j < n; ++j)
            f.at(i, j) = amplitude * std::sin(i * dx) * std::sin(j * dx);
        return to_array(f);
      },
      py::arg("n"), py::arg("amplitude") = 1.0);

  m.def(
      "random_smooth_field",
      [](int n, int max_mode, double s, std::uint64_t seed) {
        return to_array(random_smooth_field(Grid2D::make(n), max_mode, s, seed));
      },
      py::arg("n"), py::arg("max_mode") = 4, py::arg("s") = 2.5, py::arg("seed") = 1);

  m.def(
      "write_field",
      [](const std::string& path, py::array_t<double> f, double time, double length) {
        write_field(path, scalar_from_array(f, length), time);
      },
      py::arg("path"), py::arg("f"), py::arg("time") = 0.0, py::arg("length") = two_pi);

  m.def("read_field", [](const std::string& path) {
    LoadedField lf = read_field(path);
    py::dict out;
    out["time"] = lf.info.time;
    out["length"] = lf.info.length;
    if (lf.scalar) {
      out["values"] = to_array(*lf.scalar);
    } else {
      out["u1"] = to_array(lf.vector->u1, lf.vector->grid.n);
      out["u2"] = to_array(lf.vector->u2, lf.vector->grid.n);
    }
    return out;
  });
}
