#include "hinv/types.hpp"

#include <cmath>
#include <cstddef>

#include "hinv/errors.hpp"

namespace hinv {

void validate(const ReturnMatrix& data) {
    if (data.assets() < 1) throw DomainError("return matrix needs at least one asset");
    if (data.observations() < 1) throw DomainError("return matrix needs at least one observation");
    if (static_cast<Eigen::Index>(data.labels.size()) != data.assets())
        throw DomainError("label count does not match asset count");
    if (!data.returns.allFinite()) throw DomainError("return matrix contains a non-finite entry");
}

void validate(const SimulationSpec& spec) {
    if (spec.degrees_of_freedom.empty())
        throw DomainError("simulation spec needs at least one asset");
    for (int df : spec.degrees_of_freedom)
        if (df < 1) throw DomainError("degrees of freedom must be >= 1");
    if (spec.observations < 2) throw DomainError("simulation needs at least 2 observations");
}

void validate(const NormalTarget& target) {
    if (!(target.sigma_sq > 0.0) || !std::isfinite(target.sigma_sq) || !std::isfinite(target.mu))
        throw DomainError("normal target needs finite mu and sigma_sq > 0");
}

void validate(const EmpiricalDensity& density) {
    if (density.edges.size() < 2 || density.amplitudes.size() + 1 != density.edges.size())
        throw DomainError("density needs m+1 edges for m bins, m >= 1");
    for (std::size_t i = 0; i + 1 < density.edges.size(); ++i)
        if (!(density.edges[i] < density.edges[i + 1]))
            throw DomainError("density edges must be strictly increasing");
    double mass = 0.0;
    for (std::size_t i = 0; i < density.amplitudes.size(); ++i) {
        double o = density.amplitudes[i];
        if (!std::isfinite(o) || o < 0.0)
            throw DomainError("density amplitudes must be finite and non-negative");
        mass += o * o * (density.edges[i + 1] - density.edges[i]);
    }
    if (std::abs(mass - 1.0) > 1e-9)
        throw DomainError("density is not normalized: total mass " + std::to_string(mass));
}

void validate(const OptimizerConfig& cfg) {
    if (cfg.multistart_count && *cfg.multistart_count < 1)
        throw ConfigError("multistart_count must be positive");
    if (cfg.max_iterations < 1) throw ConfigError("max_iterations must be positive");
    if (!(cfg.initial_step > 0.0)) throw ConfigError("initial_step must be positive");
    if (!(cfg.step_shrink > 0.0 && cfg.step_shrink < 1.0))
        throw ConfigError("step_shrink must be in (0, 1)");
    if (!(cfg.convergence_step > 0.0)) throw ConfigError("convergence_step must be positive");
    if (!(cfg.convergence_step < cfg.initial_step))
        throw ConfigError("convergence_step must be smaller than initial_step");
    if (cfg.bin_count && *cfg.bin_count < 2) throw ConfigError("bin_count must be >= 2");
}

void validate(const PerturbationSpec& spec) {
    if (!(spec.data_fraction > 0.0 && spec.data_fraction <= 1.0))
        throw ConfigError("data_fraction must be in (0, 1]");
    if (!(spec.magnitude >= 0.0 && spec.magnitude <= 1.0))
        throw ConfigError("magnitude must be in [0, 1]");
    if (spec.replications < 1) throw ConfigError("replications must be positive");
}

}  // namespace hinv
