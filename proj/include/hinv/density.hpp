#pragma once

#include <Eigen/Dense>

#include "hinv/types.hpp"

namespace hinv {

/// Portfolio log-return series: out[t] = sum_i w_i * returns[t][i].
Eigen::VectorXd portfolio_series(const ReturnMatrix& data, const PortfolioWeights& weights);

/// Equal-width histogram over [min(series), max(series)] turned into a
/// square-root density. Bins are half-open [a_i, a_{i+1}) except the last,
/// which also owns its right edge, so every point lands in exactly one bin.
/// Requires length >= 2, a non-degenerate range and bin_count >= 2.
EmpiricalDensity bin_density(const Eigen::VectorXd& series, int bin_count);

/// Default histogram resolution: ceil(sqrt(T)).
int default_bin_count(Eigen::Index observations);

}  // namespace hinv
