#pragma once

#include <Eigen/Dense>

namespace hinv::detail {

/// Minimizes x^T Q x + q.x over the slice {x >= 0, sum(x) = 1, mean.x = e}
/// of the probability simplex by an active-set method with SVD null-space
/// subproblem solves. Q must be positive definite on the constraint null
/// space (callers add a ridge when their Q may be degenerate). Requires e
/// within the attainable range of mean; terminates finitely for strictly
/// convex Q. Throws DomainError for infeasible input and NumericalError if
/// the active set stalls.
Eigen::VectorXd slice_qp(const Eigen::MatrixXd& Q, const Eigen::VectorXd& q,
                         const Eigen::VectorXd& mean, double e);

}  // namespace hinv::detail
