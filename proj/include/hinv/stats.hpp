#pragma once

#include <Eigen/Dense>
#include <utility>

#include "hinv/types.hpp"

namespace hinv {

/// Column means and the unbiased (1/(T-1)) sample covariance, symmetrized.
/// Requires T >= 2.
std::pair<Eigen::VectorXd, Eigen::MatrixXd> sample_mean_cov(const ReturnMatrix& data);

/// Gaussian CDF with mean mu and variance sigma_sq (> 0).
double normal_cdf(double x, double mu, double sigma_sq);

}  // namespace hinv
