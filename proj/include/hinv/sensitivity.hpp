#pragma once

#include "hinv/types.hpp"

namespace hinv {

/// Replaces ceil(data_fraction * T * n) distinct entries, chosen uniformly
/// without replacement from a stream seeded by (spec.seed, replication_index),
/// with x * (1 + u) where u is uniform on [-magnitude, +magnitude]. Every
/// other entry is bitwise unchanged.
ReturnMatrix perturb_returns(const ReturnMatrix& data, const PerturbationSpec& spec,
                             int replication_index);

/// Data-perturbation sensitivity: re-runs the full frontier scan on each
/// perturbed replication and aggregates |h2_r - baseline|. Replications run
/// on `jobs` threads; aggregation order is fixed. More than 1% failed
/// replications aborts with NumericalError.
SensitivityReport sensitivity_perturbation(const ReturnMatrix& data,
                                           const PerturbationSpec& spec, int grid_size,
                                           const OptimizerConfig& cfg, int jobs = 1);

/// Invariant change when the bin count moves from base_bins to alt_bins
/// (signed h2_alt - h2_base). Exposed for pairwise comparisons and tests.
double binning_change(const ReturnMatrix& data, int base_bins, int alt_bins,
                      int grid_size, const OptimizerConfig& cfg, int jobs = 1);

/// Bin-count sensitivity: baseline at bin_count, comparison runs at
/// bin_count - 1 and bin_count + 1; reports the mean of the two absolute
/// changes. Requires bin_count >= 3.
SensitivityReport sensitivity_binning(const ReturnMatrix& data, int bin_count,
                                      int grid_size, const OptimizerConfig& cfg,
                                      int jobs = 1);

}  // namespace hinv
