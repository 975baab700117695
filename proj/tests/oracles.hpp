// Test-side oracles and helpers. Everything here is implemented
// independently of the library's code paths (plain loops, textbook
// formulas) so agreement is evidence, not tautology.
#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <vector>

namespace oracle {

/// Deterministic test-case generator. Raw mt19937_64 output scaled by hand
/// so sequences do not depend on libstdc++ distribution internals.
class Gen {
  public:
    explicit Gen(std::uint64_t seed) : engine_(seed) {}

    double uniform01() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }
    int uniform_int(int lo, int hi) {  // inclusive bounds
        return lo + static_cast<int>(static_cast<double>(hi - lo + 1) * uniform01());
    }
    double normal() {
        // Polar Box-Muller, spare discarded: simple and independent of the
        // library's cached-pair implementation.
        for (;;) {
            double u = uniform(-1.0, 1.0), v = uniform(-1.0, 1.0);
            double s = u * u + v * v;
            if (s > 0.0 && s < 1.0) return u * std::sqrt(-2.0 * std::log(s) / s);
        }
    }

  private:
    std::mt19937_64 engine_;
};

/// Two-pass column mean / unbiased covariance with explicit loops.
inline void two_pass_mean_cov(const Eigen::MatrixXd& x, Eigen::VectorXd& mean,
                              Eigen::MatrixXd& cov) {
    const Eigen::Index t = x.rows(), n = x.cols();
    mean = Eigen::VectorXd::Zero(n);
    for (Eigen::Index j = 0; j < n; ++j) {
        double s = 0.0;
        for (Eigen::Index i = 0; i < t; ++i) s += x(i, j);
        mean[j] = s / static_cast<double>(t);
    }
    cov = Eigen::MatrixXd::Zero(n, n);
    for (Eigen::Index a = 0; a < n; ++a)
        for (Eigen::Index b = 0; b < n; ++b) {
            double s = 0.0;
            for (Eigen::Index i = 0; i < t; ++i) s += (x(i, a) - mean[a]) * (x(i, b) - mean[b]);
            cov(a, b) = s / static_cast<double>(t - 1);
        }
}

/// Inverse standard normal CDF (Acklam's rational approximation, |rel err|
/// < 1.15e-9): used to build exact-quantile Gaussian samples.
inline double normal_quantile(double p) {
    if (p <= 0.0 || p >= 1.0) throw std::invalid_argument("quantile needs p in (0,1)");
    static const double a[] = {-3.969683028665376e+01, 2.209460984245205e+02,
                               -2.759285104469687e+02, 1.383577518672690e+02,
                               -3.066479806614716e+01, 2.506628277459239e+00};
    static const double b[] = {-5.447609879822406e+01, 1.615858368580409e+02,
                               -1.556989798598866e+02, 6.680131188771972e+01,
                               -1.328068155288572e+01};
    static const double c[] = {-7.784894002430293e-03, -3.223964580411365e-01,
                               -2.400758277161838e+00, -2.549732539343734e+00,
                               4.374664141464968e+00,  2.938163982698783e+00};
    static const double d[] = {7.784695709041462e-03, 3.224671290700398e-01,
                               2.445134137142996e+00, 3.754408661907416e+00};
    const double plow = 0.02425, phigh = 1.0 - plow;
    double q, r;
    if (p < plow) {
        q = std::sqrt(-2.0 * std::log(p));
        return (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
               ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
    }
    if (p > phigh) {
        q = std::sqrt(-2.0 * std::log(1.0 - p));
        return -(((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
               ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
    }
    q = p - 0.5;
    r = q * q;
    return (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) * q /
           (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1.0);
}

/// Vertices of the feasible slice {w >= 0, sum w = 1, mean.w = e}: the
/// two-asset blends that hit e, plus single-asset vertices when their mean
/// equals e. Built from first principles for oracle sweeps.
inline std::vector<Eigen::VectorXd> slice_vertices(const Eigen::VectorXd& mean, double e) {
    const Eigen::Index n = mean.size();
    std::vector<Eigen::VectorXd> vertices;
    for (Eigen::Index i = 0; i < n; ++i) {
        if (mean[i] == e) {
            Eigen::VectorXd w = Eigen::VectorXd::Zero(n);
            w[i] = 1.0;
            vertices.push_back(std::move(w));
        }
        for (Eigen::Index j = i + 1; j < n; ++j) {
            const double spread = mean[i] - mean[j];
            if (spread == 0.0) continue;
            const double theta = (e - mean[j]) / spread;
            if (theta < 0.0 || theta > 1.0) continue;
            Eigen::VectorXd w = Eigen::VectorXd::Zero(n);
            w[i] = theta;
            w[j] = 1.0 - theta;
            vertices.push_back(std::move(w));
        }
    }
    return vertices;
}

/// For n = 3 the feasible slice is a segment; returns points swept along it
/// with the given parameter step (endpoints = the two most distant
/// vertices). Used as the exhaustive grid in optimizer oracles.
inline std::vector<Eigen::VectorXd> sweep_slice_segment(const Eigen::VectorXd& mean, double e,
                                                        double step) {
    std::vector<Eigen::VectorXd> vertices = slice_vertices(mean, e);
    if (vertices.empty()) return {};
    Eigen::VectorXd lo = vertices[0], hi = vertices[0];
    double best = -1.0;
    for (const Eigen::VectorXd& a : vertices)
        for (const Eigen::VectorXd& b : vertices) {
            double dist = (a - b).norm();
            if (dist > best) {
                best = dist;
                lo = a;
                hi = b;
            }
        }
    std::vector<Eigen::VectorXd> points;
    for (double t = 0.0; t <= 1.0 + 1e-12; t += step) {
        double tt = t > 1.0 ? 1.0 : t;
        points.push_back((1.0 - tt) * lo + tt * hi);
    }
    return points;
}

/// Random point of the feasible slice: Dirichlet-weighted convex
/// combination of its vertices (independent of the library's projection).
inline Eigen::VectorXd random_slice_point(const std::vector<Eigen::VectorXd>& vertices,
                                          Gen& gen) {
    if (vertices.empty()) throw std::invalid_argument("empty slice");
    const auto k = vertices.size();
    std::vector<double> lambda(k);
    double sum = 0.0;
    for (auto& l : lambda) {
        l = -std::log(1.0 - gen.uniform01() + 1e-300);
        sum += l;
    }
    Eigen::VectorXd w = Eigen::VectorXd::Zero(vertices[0].size());
    for (std::size_t i = 0; i < k; ++i) w += (lambda[i] / sum) * vertices[i];
    return w;
}

}  // namespace oracle
