#pragma once

#include <Eigen/Dense>
#include <utility>

#include "hinv/types.hpp"

namespace hinv {

/// Attainable range of w.mean over the long-only simplex: the extreme points
/// are vertices, so the range is [min(mean), max(mean)].
std::pair<double, double> feasible_return_range(const Eigen::VectorXd& mean);

struct MinVarianceResult {
    PortfolioWeights weights;
    double variance = 0.0;  // w^T cov w under the original covariance
};

/// Long-only minimum-variance portfolio at expected return e:
///
///   minimize w^T cov w  subject to  mean.w = e, sum(w) = 1, w >= 0
///
/// solved by an active-set method on the simplex-with-equality polytope.
/// A diagonal ridge of 1e-12 * trace(cov)/n keeps the KKT systems solvable
/// for degenerate covariances; the reported variance uses the original
/// matrix. Infeasible e raises DomainError; a stalled active set raises
/// NumericalError.
MinVarianceResult solve_min_variance(const Eigen::VectorXd& mean,
                                     const Eigen::MatrixXd& cov, double e);

}  // namespace hinv
