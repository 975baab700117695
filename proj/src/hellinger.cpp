#include "hinv/hellinger.hpp"

#include <cmath>

#include "hinv/errors.hpp"
#include "hinv/stats.hpp"

namespace hinv {

namespace {

constexpr double kTwoPi = 6.283185307179586476925286766559;

// sqrt of the Gaussian density, evaluated directly (quadrature path only).
double sqrt_normal_density(double x, const NormalTarget& target) {
    double z = x - target.mu;
    return std::pow(kTwoPi * target.sigma_sq, -0.25) *
           std::exp(-z * z / (4.0 * target.sigma_sq));
}

struct Quadrature {
    const NormalTarget& target;
    long evaluations = 0;
    static constexpr long kBudget = 4'000'000;

    double eval(double x) {
        if (++evaluations > kBudget)
            throw NumericalError("quadrature oracle exceeded its evaluation budget");
        return sqrt_normal_density(x, target);
    }

    // Adaptive Simpson with Richardson acceptance.
    double refine(double a, double b, double fa, double fm, double fb, double whole,
                  double tol, int depth) {
        double m = 0.5 * (a + b);
        double lm = 0.5 * (a + m);
        double rm = 0.5 * (m + b);
        double flm = eval(lm);
        double frm = eval(rm);
        double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
        double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
        double delta = left + right - whole;
        if (std::abs(delta) <= 15.0 * tol || b - a < 1e-15 * (std::abs(a) + std::abs(b)))
            return left + right + delta / 15.0;
        if (depth <= 0) throw NumericalError("quadrature oracle failed to converge");
        return refine(a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
               refine(m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
    }

    double integrate(double a, double b, double tol) {
        double fa = eval(a);
        double fb = eval(b);
        double fm = eval(0.5 * (a + b));
        double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
        return refine(a, b, fa, fm, fb, whole, tol, 60);
    }
};

}  // namespace

double sqrt_normal_integral(double c, double d, const NormalTarget& target) {
    validate(target);
    if (c > d) throw DomainError("sqrt_normal_integral needs c <= d");
    double sigma = std::sqrt(target.sigma_sq);
    double scale = std::sqrt(2.0) * std::sqrt(sigma) * std::pow(kTwoPi, 0.25);
    double mass = normal_cdf(d, target.mu, 2.0 * target.sigma_sq) -
                  normal_cdf(c, target.mu, 2.0 * target.sigma_sq);
    double result = scale * mass;
    return result > 0.0 ? result : 0.0;
}

double hellinger_sq(const EmpiricalDensity& density, const NormalTarget& target) {
    validate(density);
    validate(target);
    double overlap = 0.0;
    for (std::size_t i = 0; i < density.amplitudes.size(); ++i) {
        if (density.amplitudes[i] == 0.0) continue;
        overlap += density.amplitudes[i] *
                   sqrt_normal_integral(density.edges[i], density.edges[i + 1], target);
    }
    double h2 = 1.0 - overlap;
    if (h2 < -1e-9 || h2 > 1.0 + 1e-9)
        throw NumericalError("squared Hellinger outside [0,1] beyond tolerance: " +
                             std::to_string(h2));
    if (h2 < 0.0) h2 = 0.0;
    if (h2 > 1.0) h2 = 1.0;
    return h2;
}

double hellinger_sq_quadrature_oracle(const EmpiricalDensity& density,
                                      const NormalTarget& target, double tol) {
    validate(density);
    validate(target);
    if (tol < 1e-10) throw DomainError("quadrature tolerance must be >= 1e-10");

    const double span = density.edges.back() - density.edges.front();
    Quadrature quad{target};
    double overlap = 0.0;
    for (std::size_t i = 0; i < density.amplitudes.size(); ++i) {
        double amplitude = density.amplitudes[i];
        if (amplitude == 0.0) continue;
        double a = density.edges[i];
        double b = density.edges[i + 1];
        double bin_tol = tol * (b - a) / span / (amplitude > 1.0 ? amplitude : 1.0);
        overlap += amplitude * quad.integrate(a, b, bin_tol);
    }
    return 1.0 - overlap;
}

}  // namespace hinv
