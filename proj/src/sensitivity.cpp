#include "hinv/sensitivity.hpp"

#include <cmath>
#include <limits>
#include <numeric>
#include <vector>

#include "hinv/errors.hpp"
#include "hinv/optimizer.hpp"
#include "hinv/rng.hpp"
#include "parallel.hpp"

namespace hinv {

ReturnMatrix perturb_returns(const ReturnMatrix& data, const PerturbationSpec& spec,
                             int replication_index) {
    validate(data);
    validate(spec);
    const auto total = static_cast<std::size_t>(data.returns.size());
    auto count = static_cast<std::size_t>(
        std::ceil(spec.data_fraction * static_cast<double>(total)));
    if (count > total) count = total;

    Rng rng = Rng::stream(spec.seed, "perturb", static_cast<std::uint64_t>(replication_index));

    // Partial Fisher-Yates over flat entry indices: the first `count` slots
    // end up holding a uniform sample without replacement.
    std::vector<std::size_t> indices(total);
    std::iota(indices.begin(), indices.end(), std::size_t{0});
    for (std::size_t i = 0; i < count; ++i) {
        std::size_t j = i + static_cast<std::size_t>(rng.uniform_int(
                                static_cast<std::uint64_t>(total - i)));
        std::swap(indices[i], indices[j]);
    }

    ReturnMatrix out = data;
    const auto n = static_cast<std::size_t>(data.assets());
    for (std::size_t i = 0; i < count; ++i) {
        const std::size_t flat = indices[i];
        const auto row = static_cast<Eigen::Index>(flat / n);
        const auto col = static_cast<Eigen::Index>(flat % n);
        const double u = rng.uniform(-spec.magnitude, spec.magnitude);
        out.returns(row, col) = data.returns(row, col) * (1.0 + u);
    }
    return out;
}

namespace {

void finish_report(SensitivityReport& report) {
    int succeeded = 0;
    double abs_sum = 0.0;
    for (double change : report.per_replication_changes) {
        if (!std::isfinite(change)) continue;
        ++succeeded;
        abs_sum += std::abs(change);
    }
    report.mean_abs_change = succeeded > 0 ? abs_sum / succeeded : 0.0;
    if (report.baseline_h2 > 0.0) {
        report.mean_pct_change = 100.0 * report.mean_abs_change / report.baseline_h2;
    } else if (report.mean_abs_change == 0.0) {
        report.mean_pct_change = 0.0;
    } else {
        throw NumericalError("baseline invariant is zero; percent change is undefined");
    }
}

}  // namespace

SensitivityReport sensitivity_perturbation(const ReturnMatrix& data,
                                           const PerturbationSpec& spec, int grid_size,
                                           const OptimizerConfig& cfg, int jobs) {
    validate(spec);
    SensitivityReport report;
    report.baseline_h2 = frontier_scan(data, grid_size, cfg, "baseline", jobs).invariant_h2;
    report.replication_count = spec.replications;
    report.per_replication_changes.assign(static_cast<std::size_t>(spec.replications),
                                          std::numeric_limits<double>::quiet_NaN());

    detail::parallel_for_index(spec.replications, jobs, [&](int r) {
        // Replications are numbered from 1 so "replication r" in reports and
        // logs matches the perturbation stream index.
        try {
            ReturnMatrix shaken = perturb_returns(data, spec, r + 1);
            double h2 = frontier_scan(shaken, grid_size, cfg, "replication", 1).invariant_h2;
            report.per_replication_changes[static_cast<std::size_t>(r)] =
                h2 - report.baseline_h2;
        } catch (const std::exception&) {
            // leave NaN; counted below against the failure budget
        }
    });

    for (double change : report.per_replication_changes)
        if (!std::isfinite(change)) ++report.failed_replications;
    if (report.failed_replications * 100 > spec.replications)
        throw NumericalError("more than 1% of perturbation replications failed (" +
                             std::to_string(report.failed_replications) + " of " +
                             std::to_string(spec.replications) + ")");
    finish_report(report);
    return report;
}

double binning_change(const ReturnMatrix& data, int base_bins, int alt_bins, int grid_size,
                      const OptimizerConfig& cfg, int jobs) {
    OptimizerConfig base_cfg = cfg;
    base_cfg.bin_count = base_bins;
    OptimizerConfig alt_cfg = cfg;
    alt_cfg.bin_count = alt_bins;
    const double base = frontier_scan(data, grid_size, base_cfg, "base-bins", jobs).invariant_h2;
    const double alt = frontier_scan(data, grid_size, alt_cfg, "alt-bins", jobs).invariant_h2;
    return alt - base;
}

SensitivityReport sensitivity_binning(const ReturnMatrix& data, int bin_count, int grid_size,
                                      const OptimizerConfig& cfg, int jobs) {
    if (bin_count < 3) throw ConfigError("bin-count sensitivity needs bin_count >= 3");
    OptimizerConfig base_cfg = cfg;
    base_cfg.bin_count = bin_count;
    SensitivityReport report;
    report.baseline_h2 = frontier_scan(data, grid_size, base_cfg, "baseline", jobs).invariant_h2;

    for (int alt : {bin_count - 1, bin_count + 1}) {
        OptimizerConfig alt_cfg = cfg;
        alt_cfg.bin_count = alt;
        double h2 = frontier_scan(data, grid_size, alt_cfg, "alt-bins", jobs).invariant_h2;
        report.per_replication_changes.push_back(h2 - report.baseline_h2);
    }
    report.replication_count = 2;
    finish_report(report);
    return report;
}

}  // namespace hinv
