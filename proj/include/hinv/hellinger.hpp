#pragma once

#include "hinv/types.hpp"

namespace hinv {

/// Integral of sqrt(g) over [c, d] for a Gaussian density g with the target's
/// parameters, in closed form:
///
///   sqrt(2) * sigma^(1/2) * (2*pi)^(1/4) * (Phi(d | mu, 2 sigma^2) - Phi(c | mu, 2 sigma^2))
///
/// Requires c <= d.
double sqrt_normal_integral(double c, double d, const NormalTarget& target);

/// Squared Hellinger distance between a binned density and a Gaussian:
/// 1 - sum_i O_i * integral of sqrt(g) over bin i. The density is zero
/// outside its edges, so the Gaussian mass out there contributes nothing to
/// the overlap. Results within 1e-9 of [0, 1] are clamped onto the interval;
/// larger excursions indicate a normalization bug and raise NumericalError.
double hellinger_sq(const EmpiricalDensity& density, const NormalTarget& target);

/// Independent check of hellinger_sq: integrates sqrt(f * g) with adaptive
/// Simpson refinement per bin to absolute tolerance tol (>= 1e-10) and
/// returns 1 - integral. Shares no code with the closed form.
double hellinger_sq_quadrature_oracle(const EmpiricalDensity& density,
                                      const NormalTarget& target, double tol);

}  // namespace hinv
