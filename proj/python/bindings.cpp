#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "volmodel/distributions.hpp"
#include "volmodel/divergence.hpp"
#include "volmodel/empirical.hpp"
#include "volmodel/fitting.hpp"
#include "volmodel/special_functions.hpp"
#include "volmodel/synth.hpp"
#include "volmodel/version.hpp"

namespace py = pybind11;
using namespace volmodel;

PYBIND11_MODULE(_core, m) {
  m.doc() = "windowed volume-price model fitting, divergence scoring, ranking";
  m.attr("__version__") = kToolVersion;

  py::enum_<ModelKind>(m, "ModelKind")
      .value("Gamma", ModelKind::Gamma)
      .value("InverseGamma", ModelKind::InverseGamma)
      .value("LogNormal", ModelKind::LogNormal)
      .value("Weibull", ModelKind::Weibull);

  py::class_<ModelParams>(m, "ModelParams")
      .def(py::init<double, double>(), py::arg("phi"), py::arg("theta"))
      .def_readwrite("phi", &ModelParams::phi)
      .def_readwrite("theta", &ModelParams::theta)
      .def("__repr__", [](const ModelParams& p) {
        return "ModelParams(phi=" + std::to_string(p.phi) +
               ", theta=" + std::to_string(p.theta) + ")";
      });

  m.def("model_name", &model_name, py::arg("kind"));
  m.def("log_gamma", &log_gamma, py::arg("x"));
  m.def(
      "regularized_incomplete_gamma",
      [](double a, double x, const std::string& tail) {
        return regularized_incomplete_gamma(
            a, x, tail == "upper" ? GammaTail::Upper : GammaTail::Lower);
      },
      py::arg("a"), py::arg("x"), py::arg("tail") = "lower");
  m.def("pdf", &pdf, py::arg("kind"), py::arg("params"), py::arg("s"));
  m.def("log_pdf", &log_pdf, py::arg("kind"), py::arg("params"), py::arg("s"));
  m.def("cdf", &cdf, py::arg("kind"), py::arg("params"), py::arg("s"));

  py::class_<EcdfPoint>(m, "EcdfPoint")
      .def_readonly("s", &EcdfPoint::s)
      .def_readonly("f", &EcdfPoint::f);

  py::class_<HistogramBin>(m, "HistogramBin")
      .def_readonly("left", &HistogramBin::left)
      .def_readonly("right", &HistogramBin::right)
      .def_readonly("width", &HistogramBin::width)
      .def_readonly("density", &HistogramBin::density)
      .def_readonly("count", &HistogramBin::count);

  py::class_<EmpiricalDistribution>(m, "EmpiricalDistribution")
      .def_readonly("ecdf", &EmpiricalDistribution::ecdf)
      .def_readonly("bins", &EmpiricalDistribution::bins)
      .def_readonly("n", &EmpiricalDistribution::n)
      .def_readonly("median", &EmpiricalDistribution::median);

  m.def(
      "build_empirical",
      [](const std::vector<double>& samples, int bins_per_decade,
         std::size_t min_samples) {
        return build_empirical(samples, bins_per_decade, min_samples);
      },
      py::arg("samples"), py::arg("bins_per_decade") = kDefaultBinsPerDecade,
      py::arg("min_samples") = kDefaultMinSamples);

  py::class_<FitOptions>(m, "FitOptions")
      .def(py::init<>())
      .def_readwrite("max_evals_per_start", &FitOptions::max_evals_per_start)
      .def_readwrite("diameter_tol", &FitOptions::diameter_tol)
      .def_readwrite("restarts", &FitOptions::restarts)
      .def_readwrite("perturbation", &FitOptions::perturbation)
      .def_readwrite("seed", &FitOptions::seed);

  py::class_<FitResult>(m, "FitResult")
      .def_readonly("kind", &FitResult::kind)
      .def_readonly("params", &FitResult::params)
      .def_readonly("rel_err_phi", &FitResult::rel_err_phi)
      .def_readonly("rel_err_theta", &FitResult::rel_err_theta)
      .def_readonly("sse", &FitResult::sse)
      .def_readonly("n_eval", &FitResult::n_eval)
      .def_readonly("converged", &FitResult::converged);

  m.def(
      "initial_params",
      [](ModelKind kind, const std::vector<double>& samples) {
        return initial_params(kind, samples);
      },
      py::arg("kind"), py::arg("samples"));
  m.def("fit_cdf", &fit_cdf, py::arg("kind"), py::arg("emp"),
        py::arg("options") = FitOptions{});
  m.def(
      "relative_errors",
      [](ModelKind kind, const ModelParams& params,
         const EmpiricalDistribution& emp) {
        const RelativeErrors err = relative_errors(kind, params, emp);
        return py::make_tuple(err.phi, err.theta);
      },
      py::arg("kind"), py::arg("params"), py::arg("emp"));

  m.def(
      "generalized_kl",
      [](const std::vector<double>& p, const std::vector<double>& q,
         const std::vector<double>& widths, const std::vector<double>& weights) {
        return generalized_kl(p, q, widths, weights);
      },
      py::arg("model_density"), py::arg("empirical_density"), py::arg("widths"),
      py::arg("weights"));
  m.def("standard_distance", &standard_distance, py::arg("kind"),
        py::arg("params"), py::arg("emp"));
  m.def("tail_distance", &tail_distance, py::arg("kind"), py::arg("params"),
        py::arg("emp"));

  m.def(
      "sample",
      [](ModelKind kind, const ModelParams& params, std::size_t n,
         std::uint64_t seed) { return sample(kind, params, n, seed); },
      py::arg("kind"), py::arg("params"), py::arg("n"), py::arg("seed"));
}
