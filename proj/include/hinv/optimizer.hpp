#pragma once

#include <Eigen/Dense>
#include <string>

#include "hinv/types.hpp"

namespace hinv {

/// Euclidean projection of w_raw onto {w >= 0, sum(w) = 1, mean.w = e},
/// computed by Dykstra's alternating projections between the affine subspace
/// and the non-negative orthant (tolerance 1e-10, capped iterations).
/// Requires e inside the attainable return range.
PortfolioWeights project_to_constraint_set(const Eigen::VectorXd& w_raw,
                                           const Eigen::VectorXd& mean, double e);

struct MinHellingerResult {
    PortfolioWeights weights;
    double h2 = 0.0;
};

/// Minimizes the binned squared Hellinger distance to `target` over feasible
/// weights by multi-start compass search: starts are the minimum-variance
/// solution, the projected centroid, the two-asset vertices of the feasible
/// slice, then seeded random feasible points; each start walks along
/// +/- coordinate directions re-projected onto the constraint set, shrinking
/// the step on failure. Deterministic given data and config.
///
/// `mv_start`, when non-null, supplies the already-solved minimum-variance
/// weights so the scan does not solve the QP twice.
MinHellingerResult solve_min_hellinger(const ReturnMatrix& data, double e,
                                       const NormalTarget& target,
                                       const OptimizerConfig& cfg,
                                       const Eigen::VectorXd* mv_start = nullptr);

/// Scans an evenly spaced grid of target returns over the feasible range
/// (endpoints pulled inward by 1e-9 of the range), solving the
/// minimum-variance problem and then the Hellinger minimization at each
/// point. The report's invariant is the minimum h2 over the grid, ties
/// broken toward smaller e. Individual point failures are tolerated up to
/// 10% of the grid; beyond that the scan raises NumericalError.
///
/// grid_size must be >= 2 unless the feasible range is a single point.
/// Points are evaluated on `jobs` threads; the result does not depend on
/// the schedule.
InvariantReport frontier_scan(const ReturnMatrix& data, int grid_size,
                              const OptimizerConfig& cfg,
                              const std::string& market_label = "market",
                              int jobs = 1);

}  // namespace hinv
