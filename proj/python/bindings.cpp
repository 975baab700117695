#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "hinv/density.hpp"
#include "hinv/errors.hpp"
#include "hinv/hellinger.hpp"
#include "hinv/market_data.hpp"
#include "hinv/markowitz.hpp"
#include "hinv/optimizer.hpp"
#include "hinv/report.hpp"
#include "hinv/sensitivity.hpp"
#include "hinv/stats.hpp"
#include "hinv/version.hpp"

namespace py = pybind11;
using namespace hinv;

PYBIND11_MODULE(_hinv, m) {
    m.doc() = "Minimum binned squared Hellinger distance between long-only portfolios "
              "and frontier-matched Gaussians";
    m.attr("__version__") = kVersion;

    py::register_exception<ConfigError>(m, "HinvConfigError", PyExc_ValueError);
    py::register_exception<ParseError>(m, "HinvParseError", PyExc_ValueError);
    py::register_exception<DomainError>(m, "HinvDomainError", PyExc_ValueError);
    py::register_exception<NumericalError>(m, "HinvNumericalError", PyExc_ArithmeticError);
    py::register_exception<IoError>(m, "HinvIoError", PyExc_OSError);

    py::class_<ReturnMatrix>(m, "ReturnMatrix")
        .def(py::init<>())
        .def_readwrite("labels", &ReturnMatrix::labels)
        .def_readwrite("returns", &ReturnMatrix::returns)
        .def_property_readonly("observations",
                               [](const ReturnMatrix& d) { return d.observations(); })
        .def_property_readonly("assets", [](const ReturnMatrix& d) { return d.assets(); });

    py::class_<NormalTarget>(m, "NormalTarget")
        .def(py::init<>())
        .def(py::init([](double mu, double sigma_sq) {
                 NormalTarget t{mu, sigma_sq};
                 validate(t);
                 return t;
             }),
             py::arg("mu"), py::arg("sigma_sq"))
        .def_readwrite("mu", &NormalTarget::mu)
        .def_readwrite("sigma_sq", &NormalTarget::sigma_sq);

    py::class_<EmpiricalDensity>(m, "EmpiricalDensity")
        .def(py::init<>())
        .def_readwrite("edges", &EmpiricalDensity::edges)
        .def_readwrite("amplitudes", &EmpiricalDensity::amplitudes)
        .def_property_readonly("bins", [](const EmpiricalDensity& d) { return d.bins(); });

    py::class_<OptimizerConfig>(m, "OptimizerConfig")
        .def(py::init<>())
        .def_readwrite("multistart_count", &OptimizerConfig::multistart_count)
        .def_readwrite("max_iterations", &OptimizerConfig::max_iterations)
        .def_readwrite("initial_step", &OptimizerConfig::initial_step)
        .def_readwrite("step_shrink", &OptimizerConfig::step_shrink)
        .def_readwrite("convergence_step", &OptimizerConfig::convergence_step)
        .def_readwrite("bin_count", &OptimizerConfig::bin_count)
        .def_readwrite("start_seed", &OptimizerConfig::start_seed);

    py::class_<ScanConfig>(m, "ScanConfig")
        .def_readonly("grid_size", &ScanConfig::grid_size)
        .def_readonly("multistart_count", &ScanConfig::multistart_count)
        .def_readonly("max_iterations", &ScanConfig::max_iterations)
        .def_readonly("initial_step", &ScanConfig::initial_step)
        .def_readonly("step_shrink", &ScanConfig::step_shrink)
        .def_readonly("convergence_step", &ScanConfig::convergence_step)
        .def_readonly("bin_count", &ScanConfig::bin_count)
        .def_readonly("bin_count_auto", &ScanConfig::bin_count_auto)
        .def_readonly("start_seed", &ScanConfig::start_seed);

    py::class_<FrontierPoint>(m, "FrontierPoint")
        .def_readonly("target_return", &FrontierPoint::target_return)
        .def_property_readonly("mv_weights",
                               [](const FrontierPoint& p) { return p.mv_weights.w; })
        .def_readonly("mv_variance", &FrontierPoint::mv_variance)
        .def_property_readonly("hellinger_weights",
                               [](const FrontierPoint& p) { return p.hellinger_weights.w; })
        .def_readonly("hellinger_sq_min", &FrontierPoint::hellinger_sq_min)
        .def_readonly("ok", &FrontierPoint::ok)
        .def_readonly("error", &FrontierPoint::error);

    py::class_<InvariantReport>(m, "InvariantReport")
        .def_readonly("market_label", &InvariantReport::market_label)
        .def_readonly("frontier", &InvariantReport::frontier)
        .def_readonly("invariant_h2", &InvariantReport::invariant_h2)
        .def_readonly("argmin_e", &InvariantReport::argmin_e)
        .def_readonly("config", &InvariantReport::config_echo)
        .def("to_json", &invariant_results_json);

    py::class_<PerturbationSpec>(m, "PerturbationSpec")
        .def(py::init<>())
        .def_readwrite("data_fraction", &PerturbationSpec::data_fraction)
        .def_readwrite("magnitude", &PerturbationSpec::magnitude)
        .def_readwrite("replications", &PerturbationSpec::replications)
        .def_readwrite("seed", &PerturbationSpec::seed);

    py::class_<SensitivityReport>(m, "SensitivityReport")
        .def_readonly("baseline_h2", &SensitivityReport::baseline_h2)
        .def_readonly("mean_abs_change", &SensitivityReport::mean_abs_change)
        .def_readonly("mean_pct_change", &SensitivityReport::mean_pct_change)
        .def_readonly("replication_count", &SensitivityReport::replication_count)
        .def_readonly("failed_replications", &SensitivityReport::failed_replications)
        .def_readonly("per_replication_changes", &SensitivityReport::per_replication_changes);

    m.def(
        "load_prices", [](const std::string& path) { return load_prices_file(path); },
        py::arg("path"), "Load a date-indexed price CSV and convert it to log-returns");
    m.def(
        "simulate_student_market",
        [](const std::vector<int>& dfs, int observations, std::uint64_t seed) {
            SimulationSpec spec;
            spec.degrees_of_freedom = dfs;
            spec.observations = observations;
            spec.seed = seed;
            return simulate_student_market(spec);
        },
        py::arg("degrees_of_freedom"), py::arg("observations"), py::arg("seed"),
        "Correlated Student-t market with one tail index per asset");
    m.def("simulate_gaussian_market", &simulate_gaussian_market, py::arg("assets"),
          py::arg("observations"), py::arg("seed"),
          "Correlated exact-Gaussian market sharing the Student market's correlation stream");
    m.def("random_correlation", &random_correlation, py::arg("assets"), py::arg("seed"));

    m.def("sample_mean_cov", &sample_mean_cov, py::arg("data"));
    m.def(
        "portfolio_series",
        [](const ReturnMatrix& data, const Eigen::VectorXd& w) {
            return portfolio_series(data, PortfolioWeights{w});
        },
        py::arg("data"), py::arg("weights"));
    m.def("bin_density", &bin_density, py::arg("series"), py::arg("bin_count"));
    m.def("default_bin_count", &default_bin_count, py::arg("observations"));
    m.def("hellinger_sq", &hellinger_sq, py::arg("density"), py::arg("target"));
    m.def("hellinger_sq_quadrature_oracle", &hellinger_sq_quadrature_oracle, py::arg("density"),
          py::arg("target"), py::arg("tol") = 1e-10);
    m.def("sqrt_normal_integral", &sqrt_normal_integral, py::arg("c"), py::arg("d"),
          py::arg("target"));

    m.def(
        "solve_min_variance",
        [](const Eigen::VectorXd& mean, const Eigen::MatrixXd& cov, double e) {
            MinVarianceResult r = solve_min_variance(mean, cov, e);
            return py::make_tuple(r.weights.w, r.variance);
        },
        py::arg("mean"), py::arg("cov"), py::arg("e"),
        "Long-only minimum-variance weights and variance at target return e");
    m.def(
        "project_to_constraint_set",
        [](const Eigen::VectorXd& w_raw, const Eigen::VectorXd& mean, double e) {
            return project_to_constraint_set(w_raw, mean, e).w;
        },
        py::arg("w_raw"), py::arg("mean"), py::arg("e"));
    m.def(
        "solve_min_hellinger",
        [](const ReturnMatrix& data, double e, const NormalTarget& target,
           const OptimizerConfig& cfg) {
            MinHellingerResult r = solve_min_hellinger(data, e, target, cfg);
            return py::make_tuple(r.weights.w, r.h2);
        },
        py::arg("data"), py::arg("e"), py::arg("target"), py::arg("cfg") = OptimizerConfig{});
    m.def("frontier_scan", &frontier_scan, py::arg("data"), py::arg("grid_size"),
          py::arg("cfg") = OptimizerConfig{}, py::arg("market_label") = "market",
          py::arg("jobs") = 1,
          py::call_guard<py::gil_scoped_release>());

    m.def("perturb_returns", &perturb_returns, py::arg("data"), py::arg("spec"),
          py::arg("replication_index"));
    m.def("sensitivity_perturbation", &sensitivity_perturbation, py::arg("data"),
          py::arg("spec"), py::arg("grid_size"), py::arg("cfg") = OptimizerConfig{},
          py::arg("jobs") = 1, py::call_guard<py::gil_scoped_release>());
    m.def("binning_change", &binning_change, py::arg("data"), py::arg("base_bins"),
          py::arg("alt_bins"), py::arg("grid_size"), py::arg("cfg") = OptimizerConfig{},
          py::arg("jobs") = 1, py::call_guard<py::gil_scoped_release>());
    m.def("sensitivity_binning", &sensitivity_binning, py::arg("data"), py::arg("bin_count"),
          py::arg("grid_size"), py::arg("cfg") = OptimizerConfig{}, py::arg("jobs") = 1,
          py::call_guard<py::gil_scoped_release>());
}
