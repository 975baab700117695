#include "hinv/stats.hpp"

#include <cmath>

#include "hinv/errors.hpp"

namespace hinv {

std::pair<Eigen::VectorXd, Eigen::MatrixXd> sample_mean_cov(const ReturnMatrix& data) {
    validate(data);
    const Eigen::Index t = data.observations();
    if (t < 2) throw DomainError("need at least 2 observations for a sample covariance");

    Eigen::VectorXd mean = data.returns.colwise().mean();
    Eigen::MatrixXd centered = data.returns.rowwise() - mean.transpose();
    Eigen::MatrixXd cov =
        (centered.transpose() * centered) / static_cast<double>(t - 1);
    cov = 0.5 * (cov + cov.transpose()).eval();  // exact symmetry
    return {std::move(mean), std::move(cov)};
}

double normal_cdf(double x, double mu, double sigma_sq) {
    if (!(sigma_sq > 0.0)) throw DomainError("normal_cdf needs sigma_sq > 0");
    // Phi(x) = erfc(-z / sqrt(2)) / 2; erfc keeps full relative accuracy in
    // the lower tail where 1 - erf would cancel.
    double z = (x - mu) / std::sqrt(sigma_sq);
    return 0.5 * std::erfc(-z / std::sqrt(2.0));
}

}  // namespace hinv
