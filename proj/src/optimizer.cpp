#include "hinv/optimizer.hpp"

#include <Eigen/SVD>
#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "hinv/density.hpp"
#include "hinv/errors.hpp"
#include "hinv/hellinger.hpp"
#include "hinv/markowitz.hpp"
#include "hinv/rng.hpp"
#include "hinv/stats.hpp"
#include "parallel.hpp"
#include "qp_core.hpp"

namespace hinv {

namespace {

constexpr int kProjectionCap = 2000;
constexpr double kProjectionTol = 1e-10;

// Generates the deterministic start sequence for the multi-start search.
// The sequence is fixed given (mean, e, seed), and requesting k starts
// always yields a prefix of the sequence for k' > k starts, so enlarging
// multistart_count can only improve the found minimum.
class StartSequence {
  public:
    StartSequence(const Eigen::VectorXd& mean, double e, const Eigen::VectorXd* mv_start,
                  std::uint64_t seed)
        : mean_(mean), e_(e), rng_(Rng::stream(seed, "multistart")) {
        if (mv_start) fixed_.push_back(*mv_start);
        const Eigen::Index n = mean.size();
        fixed_.push_back(
            project_to_constraint_set(Eigen::VectorXd::Constant(n, 1.0 / static_cast<double>(n)),
                                      mean, e)
                .w);
        // Two-asset vertices of the feasible slice: w_i = theta, w_j = 1 - theta
        // whenever the pair brackets e.
        for (Eigen::Index i = 0; i < n; ++i) {
            for (Eigen::Index j = i + 1; j < n; ++j) {
                const double spread = mean[i] - mean[j];
                if (spread == 0.0) continue;
                const double theta = (e - mean[j]) / spread;
                if (theta < 0.0 || theta > 1.0) continue;
                Eigen::VectorXd w = Eigen::VectorXd::Zero(n);
                w[i] = theta;
                w[j] = 1.0 - theta;
                fixed_.push_back(std::move(w));
            }
        }
    }

    Eigen::VectorXd next() {
        if (served_ < fixed_.size()) return fixed_[served_++];
        ++served_;
        // Uniform Dirichlet point on the simplex, then projected onto the
        // return-constraint slice.
        const Eigen::Index n = mean_.size();
        Eigen::VectorXd w(n);
        for (Eigen::Index i = 0; i < n; ++i) w[i] = -std::log(rng_.uniform_pos());
        w /= w.sum();
        return project_to_constraint_set(w, mean_, e_).w;
    }

  private:
    Eigen::VectorXd mean_;
    double e_;
    Rng rng_;
    std::vector<Eigen::VectorXd> fixed_;
    std::size_t served_ = 0;
};

}  // namespace

PortfolioWeights project_to_constraint_set(const Eigen::VectorXd& w_raw,
                                           const Eigen::VectorXd& mean, double e) {
    const Eigen::Index n = mean.size();
    if (w_raw.size() != n) throw DomainError("weight vector size does not match mean vector");
    auto [lo, hi] = feasible_return_range(mean);
    const double feas_tol = 1e-12 * std::max({1.0, std::abs(lo), std::abs(hi)});
    if (e < lo - feas_tol || e > hi + feas_tol)
        throw DomainError("target return outside attainable range; constraint set is empty");

    Eigen::MatrixXd a(2, n);
    a.row(0) = mean.transpose();
    a.row(1).setOnes();
    Eigen::Vector2d b(e, 1.0);
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(a, Eigen::ComputeThinU | Eigen::ComputeThinV);
    svd.setThreshold(1e-12);
    auto project_affine = [&](const Eigen::VectorXd& x) -> Eigen::VectorXd {
        // Minimum-norm correction pulling x onto {a x = b}.
        return x - svd.solve(a * x - b).eval();
    };

    // Dykstra's alternating projections between the affine slice and the
    // non-negative orthant converge to the Euclidean projection onto their
    // intersection (plain alternation would only find *a* point of it).
    Eigen::VectorXd x = w_raw;
    Eigen::VectorXd p = Eigen::VectorXd::Zero(n);
    Eigen::VectorXd q = Eigen::VectorXd::Zero(n);
    for (int iteration = 0; iteration < kProjectionCap; ++iteration) {
        Eigen::VectorXd y = project_affine(x + p);
        p = x + p - y;
        Eigen::VectorXd next = (y + q).cwiseMax(0.0);
        q = y + q - next;
        const double shift = (next - x).lpNorm<Eigen::Infinity>();
        x = std::move(next);
        if (shift <= kProjectionTol && iteration > 0) {
            const double residual =
                std::max(std::abs(mean.dot(x) - e), std::abs(x.sum() - 1.0));
            if (residual <= 1e-8) return PortfolioWeights{x};
        }
    }

    // When e sits within ~1e-9 of a vertex the feasible set is a sliver the
    // affine slice meets at a near-zero angle, and alternating projections
    // creep. The projection is itself a strictly convex QP over the same
    // slice, so fall back to the finite active-set solve.
    try {
        Eigen::VectorXd exact = detail::slice_qp(
            Eigen::MatrixXd::Identity(n, n), -2.0 * w_raw, mean, e);
        return PortfolioWeights{std::move(exact)};
    } catch (const std::exception& ex) {
        throw NumericalError(
            std::string("projection onto the constraint set did not converge: ") + ex.what());
    }
}

MinHellingerResult solve_min_hellinger(const ReturnMatrix& data, double e,
                                       const NormalTarget& target, const OptimizerConfig& cfg,
                                       const Eigen::VectorXd* mv_start) {
    validate(data);
    validate(target);
    validate(cfg);
    const Eigen::Index n = data.assets();
    const Eigen::VectorXd mean = data.returns.colwise().mean();
    const int bins = cfg.bin_count ? *cfg.bin_count : default_bin_count(data.observations());

    auto objective = [&](const Eigen::VectorXd& w) -> double {
        Eigen::VectorXd series = data.returns * w;
        return hellinger_sq(bin_density(series, bins), target);
    };

    std::optional<Eigen::VectorXd> mv_local;
    if (!mv_start) {
        auto [mu, cov] = sample_mean_cov(data);
        mv_local = solve_min_variance(mu, cov, e).weights.w;
        mv_start = &*mv_local;
    }

    const int starts = cfg.multistart_count ? *cfg.multistart_count : static_cast<int>(n) + 2;
    StartSequence sequence(mean, e, mv_start, cfg.start_seed);

    double best_h2 = std::numeric_limits<double>::infinity();
    Eigen::VectorXd best_w;
    int degenerate_starts = 0;
    for (int s = 0; s < starts; ++s) {
        Eigen::VectorXd x = sequence.next();
        double fx;
        try {
            fx = objective(x);
        } catch (const DomainError&) {  // zero-spread start; try the next one
            ++degenerate_starts;
            continue;
        }

        double step = cfg.initial_step;
        for (int iteration = 0; iteration < cfg.max_iterations; ++iteration) {
            // Poll the projected +/- coordinate moves and take the best
            // strictly improving one.
            double best_fc = fx;
            Eigen::VectorXd best_cand;
            for (Eigen::Index i = 0; i < n; ++i) {
                for (double sign : {1.0, -1.0}) {
                    Eigen::VectorXd raw = x;
                    raw[i] += sign * step;
                    Eigen::VectorXd cand = project_to_constraint_set(raw, mean, e).w;
                    if ((cand - x).lpNorm<Eigen::Infinity>() <= 1e-15) continue;
                    double fc;
                    try {
                        fc = objective(cand);
                    } catch (const DomainError&) {
                        continue;
                    }
                    if (fc < best_fc) {
                        best_fc = fc;
                        best_cand = std::move(cand);
                    }
                }
            }
            if (best_fc < fx) {
                fx = best_fc;
                x = std::move(best_cand);
            } else {
                step *= cfg.step_shrink;
                if (step < cfg.convergence_step) break;
            }
        }

        if (fx < best_h2) {
            best_h2 = fx;
            best_w = std::move(x);
        }
    }

    if (!best_w.size()) {
        if (degenerate_starts > 0)
            throw DomainError("portfolio series has zero spread at every start");
        throw ConfigError("multistart_count must be at least 1");
    }
    return MinHellingerResult{PortfolioWeights{std::move(best_w)}, best_h2};
}

InvariantReport frontier_scan(const ReturnMatrix& data, int grid_size,
                              const OptimizerConfig& cfg, const std::string& market_label,
                              int jobs) {
    validate(data);
    validate(cfg);
    auto [mean, cov] = sample_mean_cov(data);
    auto [lo, hi] = feasible_return_range(mean);
    const double range = hi - lo;
    const bool single_point = range <= 1e-14 * std::max({1.0, std::abs(lo), std::abs(hi)});

    std::vector<double> grid;
    if (single_point) {
        grid.push_back(lo);
    } else {
        if (grid_size < 2) throw ConfigError("grid size must be at least 2");
        const double inner_lo = lo + 1e-9 * range;
        const double inner_hi = hi - 1e-9 * range;
        grid.reserve(static_cast<std::size_t>(grid_size));
        for (int k = 0; k < grid_size; ++k)
            grid.push_back(inner_lo + (inner_hi - inner_lo) * static_cast<double>(k) /
                                          static_cast<double>(grid_size - 1));
    }

    InvariantReport report;
    report.market_label = market_label;
    report.frontier.resize(grid.size());
    detail::parallel_for_index(static_cast<int>(grid.size()), jobs, [&](int k) {
        FrontierPoint& point = report.frontier[static_cast<std::size_t>(k)];
        point.target_return = grid[static_cast<std::size_t>(k)];
        try {
            MinVarianceResult mv = solve_min_variance(mean, cov, point.target_return);
            NormalTarget target{point.target_return, mv.variance};
            validate(target);
            MinHellingerResult best =
                solve_min_hellinger(data, point.target_return, target, cfg, &mv.weights.w);
            point.mv_weights = std::move(mv.weights);
            point.mv_variance = mv.variance;
            point.hellinger_weights = std::move(best.weights);
            point.hellinger_sq_min = best.h2;
            point.ok = true;
        } catch (const std::exception& ex) {
            point.ok = false;
            point.error = ex.what();
        }
    });

    std::size_t succeeded = 0;
    for (const FrontierPoint& point : report.frontier)
        if (point.ok) ++succeeded;
    if (succeeded * 10 < report.frontier.size() * 9) {
        std::string first_error;
        for (const FrontierPoint& point : report.frontier)
            if (!point.ok) {
                first_error = point.error;
                break;
            }
        throw NumericalError("frontier scan failed at more than 10% of grid points (first: " +
                             first_error + ")");
    }

    report.invariant_h2 = std::numeric_limits<double>::infinity();
    for (const FrontierPoint& point : report.frontier) {
        if (point.ok && point.hellinger_sq_min < report.invariant_h2) {
            report.invariant_h2 = point.hellinger_sq_min;
            report.argmin_e = point.target_return;
        }
    }

    report.config_echo.grid_size = static_cast<int>(grid.size());
    report.config_echo.multistart_count =
        cfg.multistart_count ? *cfg.multistart_count : static_cast<int>(data.assets()) + 2;
    report.config_echo.max_iterations = cfg.max_iterations;
    report.config_echo.initial_step = cfg.initial_step;
    report.config_echo.step_shrink = cfg.step_shrink;
    report.config_echo.convergence_step = cfg.convergence_step;
    report.config_echo.bin_count =
        cfg.bin_count ? *cfg.bin_count : default_bin_count(data.observations());
    report.config_echo.bin_count_auto = !cfg.bin_count.has_value();
    report.config_echo.start_seed = cfg.start_seed;
    return report;
}

}  // namespace hinv
