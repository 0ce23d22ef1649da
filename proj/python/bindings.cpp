#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "yule/asymptotics.hpp"
#include "yule/charpoly.hpp"
#include "yule/density.hpp"
#include "yule/errors.hpp"
#include "yule/kernel.hpp"
#include "yule/mgf.hpp"
#include "yule/quadrature.hpp"
#include "yule/simulation.hpp"

namespace py = pybind11;
using namespace yule;

PYBIND11_MODULE(_core, m) {
  m.doc() = "Exact and simulated distribution of the sample correlation of two AR(1) paths";

  auto contract = py::register_exception<ContractError>(m, "ContractError", PyExc_ValueError);
  auto domain = py::register_exception<DomainError>(m, "DomainError", PyExc_ValueError);
  py::register_exception<NumericError>(m, "NumericError", PyExc_RuntimeError);
  (void)contract;
  (void)domain;

  py::class_<QuadResult>(m, "QuadResult")
      .def_readonly("value", &QuadResult::value)
      .def_readonly("error_estimate", &QuadResult::error_estimate)
      .def_readonly("nodes_used", &QuadResult::nodes_used)
      .def_readonly("converged", &QuadResult::converged);

  // Python integrands run on the calling thread only.
  m.def("integrate_quadrant", [](const Integrand& f, double tol_rel, double tol_abs, long max_nodes) {
    return integrate_quadrant(f, tol_rel, tol_abs, max_nodes, 1);
  }, py::arg("f"), py::arg("tol_rel"), py::arg("tol_abs"), py::arg("max_nodes") = 2'000'000);
  m.def("integrate_triangle_symmetric", [](const Integrand& f, double tol_rel, double tol_abs, long max_nodes) {
    return integrate_triangle_symmetric(f, tol_rel, tol_abs, max_nodes, 1);
  }, py::arg("f"), py::arg("tol_rel"), py::arg("tol_abs"), py::arg("max_nodes") = 2'000'000);

  m.def("build_kernel", [](int n, double alpha) {
    const auto K = build_kernel(n, alpha);
    std::vector<std::vector<double>> rows(n, std::vector<double>(n));
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) rows[j][k] = K(j, k);
    return rows;
  }, py::arg("n"), py::arg("alpha"));
  m.def("eigenvalues", [](int n, double alpha) { return eigen_sym(build_kernel(n, alpha)).eigenvalues; },
        py::arg("n"), py::arg("alpha"));
  m.def("largest_eigenvalue", &largest_eigenvalue, py::arg("n"), py::arg("alpha"));
  m.def("closed_product", [](int n, double alpha) { return closed_product(n, alpha).product; }, py::arg("n"),
        py::arg("alpha"));

  m.def("d_n", [](int n, double alpha, double lambda) { return d_n(n, alpha, lambda); }, py::arg("n"),
        py::arg("alpha"), py::arg("lam"));
  m.def("log_d_n", [](int n, double alpha, double lambda) { return log_d_n(n, alpha, lambda); }, py::arg("n"),
        py::arg("alpha"), py::arg("lam"));
  m.def("d_n_prime", &d_n_prime, py::arg("n"), py::arg("alpha"), py::arg("lam"));
  m.def("det_oracle", [](int n, double alpha, double lambda) { return det_oracle(n, alpha, lambda).value(); },
        py::arg("n"), py::arg("alpha"), py::arg("lam"));
  m.def("log_d_n_asymptotic", &log_d_n_asymptotic, py::arg("t"), py::arg("n"), py::arg("alpha"));

  m.def("phi_n", [](int n, double alpha, double s11, double s12, double s22, double r) {
    return phi_n(n, alpha, MgfInputs{s11, s12, s22, r});
  }, py::arg("n"), py::arg("alpha"), py::arg("s11"), py::arg("s12"), py::arg("s22"), py::arg("r") = 0.0);

  py::class_<MomentResult>(m, "MomentResult")
      .def_readonly("m", &MomentResult::m)
      .def_readonly("n", &MomentResult::n)
      .def_readonly("alpha", &MomentResult::alpha)
      .def_readonly("r", &MomentResult::r)
      .def_readonly("value", &MomentResult::value)
      .def_readonly("quad", &MomentResult::quad);

  m.def("moment", [](int order, int n, double alpha, double r, double tol_rel, long max_nodes, int threads) {
    MomentOptions o;
    o.tol_rel = tol_rel;
    o.max_nodes = max_nodes;
    o.threads = threads;
    py::gil_scoped_release release;
    return moment(order, n, alpha, r, o);
  }, py::arg("m"), py::arg("n"), py::arg("alpha"), py::arg("r") = 0.0, py::arg("tol_rel") = 0.0,
        py::arg("max_nodes") = 2'000'000, py::arg("threads") = 0);
  m.def("second_moment_scaled", [](int n, double alpha, int threads) {
    MomentOptions o;
    o.threads = threads;
    py::gil_scoped_release release;
    return second_moment_scaled(n, alpha, o);
  }, py::arg("n"), py::arg("alpha"), py::arg("threads") = 0);
  m.def("limit_second_moment", &limit_second_moment, py::arg("alpha"));

  py::class_<DensityApprox>(m, "DensityApprox")
      .def_readonly("a", &DensityApprox::a)
      .def_readonly("b", &DensityApprox::b)
      .def_readonly("coeffs", &DensityApprox::coeffs)
      .def_readonly("order", &DensityApprox::order)
      .def("__call__", &evaluate_density, py::arg("x"))
      .def("grid", &density_grid, py::arg("points") = 401)
      .def("moments", &density_moments, py::arg("k_max"));
  m.def("legendre_from_moments", &legendre_from_moments, py::arg("moments"), py::arg("a") = -5.0,
        py::arg("b") = 5.0);

  m.def("sample_theta", [](const std::string& family, int n, double alpha, double beta, double r,
                           std::vector<double> sigma, std::vector<double> tau, long reps, std::uint64_t seed,
                           bool scale, int threads) {
    ModelSpec s;
    s.family = parse_family(family);
    s.n = n;
    s.alpha = alpha;
    s.beta = s.family == Family::second_chaos ? beta : alpha;
    s.r = r;
    s.sigma = std::move(sigma);
    s.tau = std::move(tau);
    py::gil_scoped_release release;
    return sample_theta(s, reps, seed, scale, threads).values;
  }, py::arg("family"), py::arg("n"), py::arg("alpha"), py::arg("beta") = 0.0, py::arg("r") = 0.0,
        py::arg("sigma") = std::vector<double>{1.0}, py::arg("tau") = std::vector<double>{1.0},
        py::arg("reps") = 10000, py::arg("seed") = 1, py::arg("scale") = false, py::arg("threads") = 0);

  m.def("kolmogorov_distance", &kolmogorov_distance, py::arg("samples"));
  m.def("wasserstein1_distance", &wasserstein1_distance, py::arg("samples"));
  m.def("chaos_constants", [](double alpha, double beta, const std::vector<double>& sigma,
                              const std::vector<double>& tau) {
    const auto c = chaos_constants(alpha, beta, sigma, tau);
    return py::dict(py::arg("M3") = c.M3, py::arg("M4") = c.M4, py::arg("M5") = c.M5, py::arg("C25") = c.C25,
                    py::arg("C26") = c.C26);
  }, py::arg("alpha"), py::arg("beta"), py::arg("sigma"), py::arg("tau"));
  m.def("power_lower_bound", &power_lower_bound, py::arg("n"), py::arg("alpha"), py::arg("r"), py::arg("c_a"),
        py::arg("C13") = 0.0);
  m.def("auto_critical_value", &auto_critical_value, py::arg("alpha"));
  m.def("mc_power", [](int n, double alpha, double r, double c_a, long reps, std::uint64_t seed, int threads) {
    py::gil_scoped_release release;
    return mc_power(n, alpha, r, c_a, reps, seed, threads);
  }, py::arg("n"), py::arg("alpha"), py::arg("r"), py::arg("c_a"), py::arg("reps") = 10000, py::arg("seed") = 1,
        py::arg("threads") = 0);
}
