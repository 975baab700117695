#include "hinv/markowitz.hpp"

#include <Eigen/Cholesky>
#include <Eigen/SVD>
#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "hinv/errors.hpp"
#include "qp_core.hpp"

namespace hinv {

namespace detail {

namespace {

// Rank cutoff for the constraint matrix inside the equality-constrained
// subproblem; singular values below cutoff * sigma_max count as zero.
constexpr double kRankCutoff = 1e-12;

// Solve the equality-constrained subproblem restricted to the free index
// set: minimize x^T Q x + q.x subject to the rows of c fixed at their
// current values. `x` enters holding a feasible point and leaves holding
// the minimizer over the affine slice through that point.
void solve_equality_qp(const Eigen::MatrixXd& Q, const Eigen::VectorXd& q,
                       const Eigen::MatrixXd& c, Eigen::VectorXd& x) {
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(c, Eigen::ComputeFullV);
    const Eigen::VectorXd& sv = svd.singularValues();
    const double cutoff = kRankCutoff * (sv.size() > 0 ? sv[0] : 0.0);
    Eigen::Index rank = 0;
    while (rank < sv.size() && sv[rank] > cutoff) ++rank;

    const Eigen::Index dim = c.cols();
    if (rank >= dim) return;  // constraints pin x completely

    // Columns of V beyond the numerical rank span the constraint null space.
    const Eigen::MatrixXd z = svd.matrixV().rightCols(dim - rank);
    const Eigen::MatrixXd reduced = z.transpose() * Q * z;
    const Eigen::VectorXd rhs = -z.transpose() * (Q * x + 0.5 * q);

    // A reduced gradient below rounding noise means the point is already
    // stationary on this slice; solving would divide noise by a possibly
    // ridge-sized Hessian and return a garbage step (identical assets make
    // the reduced curvature as small as the regularization itself).
    const double gradient_scale =
        static_cast<double>(dim) * Q.cwiseAbs().maxCoeff() *
            (1.0 + x.lpNorm<Eigen::Infinity>()) +
        0.5 * q.lpNorm<Eigen::Infinity>();
    if (rhs.lpNorm<Eigen::Infinity>() <= 1e-13 * gradient_scale) return;

    Eigen::LDLT<Eigen::MatrixXd> ldlt(reduced);
    if (ldlt.info() != Eigen::Success)
        throw NumericalError("equality-constrained subproblem is not solvable");
    x += z * ldlt.solve(rhs);
}

}  // namespace

Eigen::VectorXd slice_qp(const Eigen::MatrixXd& Q, const Eigen::VectorXd& q,
                         const Eigen::VectorXd& mean, double e) {
    const Eigen::Index n = mean.size();
    if (n < 1) throw DomainError("mean vector is empty");
    if (Q.rows() != n || Q.cols() != n || q.size() != n)
        throw DomainError("objective size does not match mean vector");

    const double lo = mean.minCoeff();
    const double hi = mean.maxCoeff();
    const double span_tol = 1e-12 * std::max({1.0, std::abs(lo), std::abs(hi)});
    if (e < lo - span_tol || e > hi + span_tol)
        throw DomainError("target return " + std::to_string(e) + " outside attainable range [" +
                          std::to_string(lo) + ", " + std::to_string(hi) + "]");
    e = std::clamp(e, lo, hi);

    if (n == 1) return Eigen::VectorXd::Ones(1);

    // Feasible start: blend of the extreme-return vertices, or the uniform
    // portfolio when every asset has (numerically) the same mean.
    Eigen::VectorXd x = Eigen::VectorXd::Zero(n);
    if (hi - lo <= span_tol) {
        x.setConstant(1.0 / static_cast<double>(n));
    } else {
        Eigen::Index i_lo = 0, i_hi = 0;
        mean.minCoeff(&i_lo);
        mean.maxCoeff(&i_hi);
        const double theta = (e - lo) / (hi - lo);
        x[i_hi] = theta;
        x[i_lo] += 1.0 - theta;
    }

    std::vector<bool> at_bound(static_cast<std::size_t>(n));
    for (Eigen::Index i = 0; i < n; ++i) at_bound[static_cast<std::size_t>(i)] = (x[i] == 0.0);

    const int max_iterations = 100 * (static_cast<int>(n) + 2);
    for (int iteration = 0; iteration < max_iterations; ++iteration) {
        std::vector<Eigen::Index> free_idx;
        for (Eigen::Index i = 0; i < n; ++i)
            if (!at_bound[static_cast<std::size_t>(i)]) free_idx.push_back(i);
        const auto nf = static_cast<Eigen::Index>(free_idx.size());

        Eigen::VectorXd xf(nf), qf_lin(nf);
        Eigen::MatrixXd qf(nf, nf);
        Eigen::MatrixXd cf(2, nf);
        for (Eigen::Index a = 0; a < nf; ++a) {
            const Eigen::Index ia = free_idx[static_cast<std::size_t>(a)];
            xf[a] = x[ia];
            qf_lin[a] = q[ia];
            cf(0, a) = mean[ia];
            cf(1, a) = 1.0;
            for (Eigen::Index b = 0; b < nf; ++b)
                qf(a, b) = Q(ia, free_idx[static_cast<std::size_t>(b)]);
        }

        Eigen::VectorXd target = xf;
        solve_equality_qp(qf, qf_lin, cf, target);
        Eigen::VectorXd direction = target - xf;

        if (direction.lpNorm<Eigen::Infinity>() > 1e-13 * (1.0 + xf.lpNorm<Eigen::Infinity>())) {
            // Ratio test: walk toward the subproblem minimizer until a
            // non-negativity bound blocks the step.
            double alpha = 1.0;
            Eigen::Index blocking = -1;
            for (Eigen::Index a = 0; a < nf; ++a) {
                if (direction[a] < 0.0) {
                    double limit = xf[a] / (-direction[a]);
                    if (limit < alpha) {
                        alpha = limit;
                        blocking = a;
                    }
                }
            }
            xf += alpha * direction;
            if (blocking >= 0) {
                xf[blocking] = 0.0;
                at_bound[static_cast<std::size_t>(
                    free_idx[static_cast<std::size_t>(blocking)])] = true;
            }
            for (Eigen::Index a = 0; a < nf; ++a)
                x[free_idx[static_cast<std::size_t>(a)]] = std::max(xf[a], 0.0);
            continue;
        }

        // Subproblem optimum reached; check the sign of the bound
        // multipliers. Stationarity on the free rows gives the equality
        // multipliers (lam_m, lam_1) by least squares; the bound multiplier
        // for a held asset i is then g_i + lam_m * mean_i + lam_1, which
        // must be non-negative at the constrained optimum.
        Eigen::VectorXd gradient = 2.0 * Q * x + q;
        Eigen::VectorXd gf(nf);
        for (Eigen::Index a = 0; a < nf; ++a)
            gf[a] = gradient[free_idx[static_cast<std::size_t>(a)]];
        Eigen::Vector2d lam =
            cf.transpose().jacobiSvd(Eigen::ComputeThinU | Eigen::ComputeThinV).solve(-gf);

        const double dual_tol = 1e-9 * (1.0 + gradient.lpNorm<Eigen::Infinity>());
        double worst = -dual_tol;
        Eigen::Index worst_idx = -1;
        for (Eigen::Index i = 0; i < n; ++i) {
            if (!at_bound[static_cast<std::size_t>(i)]) continue;
            double mu = gradient[i] + lam[0] * mean[i] + lam[1];
            if (mu < worst) {
                worst = mu;
                worst_idx = i;
            }
        }
        if (worst_idx < 0) return x;
        at_bound[static_cast<std::size_t>(worst_idx)] = false;
    }
    throw NumericalError("active-set method failed to converge");
}

}  // namespace detail

std::pair<double, double> feasible_return_range(const Eigen::VectorXd& mean) {
    if (mean.size() < 1) throw DomainError("mean vector is empty");
    return {mean.minCoeff(), mean.maxCoeff()};
}

MinVarianceResult solve_min_variance(const Eigen::VectorXd& mean, const Eigen::MatrixXd& cov,
                                     double e) {
    const Eigen::Index n = mean.size();
    if (n < 1) throw DomainError("mean vector is empty");
    if (cov.rows() != n || cov.cols() != n)
        throw DomainError("covariance matrix size does not match mean vector");
    if (!mean.allFinite() || !cov.allFinite())
        throw DomainError("non-finite entries in mean or covariance");
    if (!std::isfinite(e)) throw DomainError("target return must be finite");

    // Ridge keeps the reduced Hessian positive definite for degenerate
    // covariances; the reported variance uses the original matrix.
    Eigen::MatrixXd q = 0.5 * (cov + cov.transpose());
    q.diagonal().array() += 1e-12 * q.trace() / static_cast<double>(n);

    MinVarianceResult result;
    result.weights.w = detail::slice_qp(q, Eigen::VectorXd::Zero(n), mean, e);
    result.variance = result.weights.w.dot(0.5 * (cov + cov.transpose()) * result.weights.w);
    return result;
}

}  // namespace hinv
