#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace hinv {

/// T x n matrix of one-period log-returns plus asset labels. Column order
/// matches label order.
struct ReturnMatrix {
    std::vector<std::string> labels;
    Eigen::MatrixXd returns;  // T rows (observations), n columns (assets)

    Eigen::Index observations() const { return returns.rows(); }
    Eigen::Index assets() const { return returns.cols(); }
};

/// Throws DomainError unless labels/returns are consistent, n >= 1, T >= 1
/// and every entry is finite.
void validate(const ReturnMatrix& data);

/// Parameters of a simulated correlated Student-t market.
struct SimulationSpec {
    std::vector<int> degrees_of_freedom;  // one per asset, each >= 1
    int observations = 0;                 // >= 2
    std::uint64_t seed = 0;
};

void validate(const SimulationSpec& spec);

/// Comparison Gaussian: mean and variance in log-return units.
struct NormalTarget {
    double mu = 0.0;
    double sigma_sq = 1.0;  // > 0
};

void validate(const NormalTarget& target);

/// Piecewise-constant density: on bin [edges[i], edges[i+1]) the density is
/// amplitudes[i]^2. Amplitudes are square roots of the density, so the
/// normalization invariant is sum_i amplitudes[i]^2 * width_i == 1.
struct EmpiricalDensity {
    std::vector<double> edges;       // strictly increasing, size m + 1
    std::vector<double> amplitudes;  // non-negative, size m

    std::size_t bins() const { return amplitudes.size(); }
};

void validate(const EmpiricalDensity& density);

/// Long-only allocation on the probability simplex.
struct PortfolioWeights {
    Eigen::VectorXd w;
};

/// Per-target-return outcome of a frontier scan.
struct FrontierPoint {
    double target_return = 0.0;
    PortfolioWeights mv_weights;
    double mv_variance = 0.0;
    PortfolioWeights hellinger_weights;
    double hellinger_sq_min = 0.0;
    bool ok = false;
    std::string error;  // set when !ok
};

/// Knobs for the derivative-free Hellinger minimization.
struct OptimizerConfig {
    /// Number of starts; when unset, n + 2 starts are used.
    std::optional<int> multistart_count;
    int max_iterations = 400;       // compass passes per start
    double initial_step = 0.25;     // simplex units
    double step_shrink = 0.7;       // in (0, 1)
    double convergence_step = 1e-4; // < initial_step
    /// Histogram bins per objective evaluation; when unset, ceil(sqrt(T)).
    std::optional<int> bin_count;
    /// Seed for the stream generating starts beyond the deterministic ones.
    std::uint64_t start_seed = 0;
};

void validate(const OptimizerConfig& cfg);

/// Effective scan settings, echoed into every report.
struct ScanConfig {
    int grid_size = 0;
    int multistart_count = 0;
    int max_iterations = 0;
    double initial_step = 0.0;
    double step_shrink = 0.0;
    double convergence_step = 0.0;
    int bin_count = 0;        // resolved value (0 while unresolved)
    bool bin_count_auto = false;
    std::uint64_t start_seed = 0;
};

/// Frontier scan result: per-grid-point outcomes and the global minimum.
struct InvariantReport {
    std::string market_label;
    std::vector<FrontierPoint> frontier;
    double invariant_h2 = 0.0;
    double argmin_e = 0.0;
    ScanConfig config_echo;
};

/// Random data-perturbation experiment settings.
struct PerturbationSpec {
    double data_fraction = 0.05;  // in (0, 1]
    double magnitude = 0.05;      // in (0, 1]
    int replications = 1000;
    std::uint64_t seed = 0;
};

void validate(const PerturbationSpec& spec);

/// Aggregated sensitivity outcome.
struct SensitivityReport {
    double baseline_h2 = 0.0;
    double mean_abs_change = 0.0;
    double mean_pct_change = 0.0;  // percent of baseline
    int replication_count = 0;
    int failed_replications = 0;
    std::vector<double> per_replication_changes;  // signed h2_r - baseline
};

}  // namespace hinv
