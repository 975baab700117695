#include <doctest.h>

#include <cmath>
#include <cstdint>
#include <vector>

#include "hinv/errors.hpp"
#include "hinv/market_data.hpp"
#include "hinv/sensitivity.hpp"
#include "oracles.hpp"

using namespace hinv;

namespace {

ReturnMatrix tiny_market(std::uint64_t seed, int t, std::vector<int> dfs) {
    SimulationSpec spec;
    spec.degrees_of_freedom = std::move(dfs);
    spec.observations = t;
    spec.seed = seed;
    return simulate_student_market(spec);
}

// Cheap scan settings so replication loops stay fast.
OptimizerConfig quick_config() {
    OptimizerConfig cfg;
    cfg.multistart_count = 2;
    cfg.convergence_step = 1e-3;
    return cfg;
}

int count_changed(const ReturnMatrix& a, const ReturnMatrix& b) {
    int changed = 0;
    for (int i = 0; i < a.observations(); ++i)
        for (int j = 0; j < a.assets(); ++j)
            if (a.returns(i, j) != b.returns(i, j)) ++changed;
    return changed;
}

}  // namespace

TEST_CASE("smallest perturbation touches exactly one entry") {
    ReturnMatrix data;
    data.returns.resize(2, 1);
    data.returns << 0.01, -0.02;
    data.labels = {"a1"};

    PerturbationSpec spec;
    spec.data_fraction = 0.4;  // ceil(0.4 * 2 * 1) = 1
    spec.magnitude = 0.5;
    spec.seed = 9;
    for (int r = 1; r <= 20; ++r) {
        ReturnMatrix out = perturb_returns(data, spec, r);
        CHECK(count_changed(data, out) == 1);
        // the changed entry stays within the relative band
        for (int i = 0; i < 2; ++i) {
            const double x = data.returns(i, 0), y = out.returns(i, 0);
            if (x != y) CHECK(std::abs(y / x - 1.0) <= spec.magnitude + 1e-15);
        }
    }
}

TEST_CASE("zero magnitude leaves the matrix bitwise unchanged") {
    ReturnMatrix data = tiny_market(3, 60, {4, 3});
    PerturbationSpec spec;
    spec.data_fraction = 0.5;
    spec.magnitude = 0.0;
    spec.seed = 1;
    ReturnMatrix out = perturb_returns(data, spec, 1);
    CHECK(count_changed(data, out) == 0);

    spec.replications = 4;
    SensitivityReport rep = sensitivity_perturbation(data, spec, 5, quick_config());
    CHECK(rep.mean_abs_change == 0.0);
    CHECK(rep.mean_pct_change == 0.0);
    CHECK(rep.failed_replications == 0);
}

TEST_CASE("perturbation count matches the ceiling rule exactly") {
    ReturnMatrix data = tiny_market(5, 20, {4, 3, 3});  // 60 entries
    PerturbationSpec spec;
    spec.data_fraction = 0.25;  // ceil(15) = 15 entries per replication
    spec.magnitude = 0.5;
    spec.seed = 17;

    std::vector<int> touched(60, 0);
    for (int r = 1; r <= 200; ++r) {
        ReturnMatrix out = perturb_returns(data, spec, r);
        CHECK(count_changed(data, out) == 15);
        for (int i = 0; i < 20; ++i)
            for (int j = 0; j < 3; ++j)
                if (data.returns(i, j) != out.returns(i, j)) ++touched[i * 3 + j];
    }
    // every entry is selected eventually (miss probability 0.75^200 per entry)
    for (int k = 0; k < 60; ++k) CHECK(touched[k] > 0);
    // selection is roughly uniform: expected 50 hits per entry
    for (int k = 0; k < 60; ++k) {
        CHECK(touched[k] > 20);
        CHECK(touched[k] < 90);
    }
}

TEST_CASE("replications are deterministic and mutually distinct") {
    ReturnMatrix data = tiny_market(7, 40, {4, 3});
    PerturbationSpec spec;
    spec.data_fraction = 0.1;
    spec.magnitude = 0.2;
    spec.seed = 23;

    ReturnMatrix first = perturb_returns(data, spec, 1);
    ReturnMatrix again = perturb_returns(data, spec, 1);
    CHECK(count_changed(first, again) == 0);

    ReturnMatrix second = perturb_returns(data, spec, 2);
    CHECK(count_changed(first, second) > 0);

    // a different base seed reshuffles replication 1
    PerturbationSpec other = spec;
    other.seed = 24;
    ReturnMatrix reseeded = perturb_returns(data, other, 1);
    CHECK(count_changed(first, reseeded) > 0);
}

TEST_CASE("perturbation report aggregates its own replication list") {
    ReturnMatrix data = tiny_market(13, 120, {4, 3});
    PerturbationSpec spec;
    spec.data_fraction = 0.05;
    spec.magnitude = 0.05;
    spec.replications = 8;
    spec.seed = 31;
    SensitivityReport rep = sensitivity_perturbation(data, spec, 5, quick_config());

    REQUIRE(static_cast<int>(rep.per_replication_changes.size()) == spec.replications);
    CHECK(rep.failed_replications == 0);
    CHECK(rep.replication_count == spec.replications);
    CHECK(rep.baseline_h2 > 0.0);

    double abs_sum = 0.0;
    for (double c : rep.per_replication_changes) abs_sum += std::abs(c);
    const double mean_abs = abs_sum / spec.replications;
    CHECK(rep.mean_abs_change == doctest::Approx(mean_abs).epsilon(1e-12));
    CHECK(rep.mean_pct_change ==
          doctest::Approx(100.0 * mean_abs / rep.baseline_h2).epsilon(1e-9));

    // byte-for-byte reproducible, including across thread counts
    SensitivityReport rep2 = sensitivity_perturbation(data, spec, 5, quick_config(), 2);
    REQUIRE(rep2.per_replication_changes.size() == rep.per_replication_changes.size());
    for (std::size_t i = 0; i < rep.per_replication_changes.size(); ++i)
        CHECK(rep.per_replication_changes[i] == rep2.per_replication_changes[i]);
    CHECK(rep.mean_abs_change == rep2.mean_abs_change);
}

TEST_CASE("binning self-comparison is exactly zero") {
    ReturnMatrix data = tiny_market(19, 100, {4, 3});
    OptimizerConfig cfg = quick_config();
    CHECK(binning_change(data, 12, 12, 5, cfg) == 0.0);
}

TEST_CASE("binning sensitivity averages the two neighbour changes") {
    ReturnMatrix data = tiny_market(29, 150, {4, 3});
    OptimizerConfig cfg = quick_config();
    const int bins = 12;
    SensitivityReport rep = sensitivity_binning(data, bins, 5, cfg);
    REQUIRE(rep.replication_count == 2);
    REQUIRE(rep.per_replication_changes.size() == 2);

    const double down = binning_change(data, bins, bins - 1, 5, cfg);
    const double up = binning_change(data, bins, bins + 1, 5, cfg);
    CHECK(rep.per_replication_changes[0] == down);
    CHECK(rep.per_replication_changes[1] == up);
    const double mean_abs = 0.5 * (std::abs(down) + std::abs(up));
    CHECK(rep.mean_abs_change == doctest::Approx(mean_abs).epsilon(1e-12));
    CHECK(rep.mean_pct_change ==
          doctest::Approx(100.0 * mean_abs / rep.baseline_h2).epsilon(1e-9));
}

TEST_CASE("sensitivity rejects invalid settings") {
    ReturnMatrix data = tiny_market(37, 80, {4, 3});
    OptimizerConfig cfg = quick_config();

    PerturbationSpec bad;
    bad.data_fraction = 0.0;
    CHECK_THROWS_AS(sensitivity_perturbation(data, bad, 5, cfg), ConfigError);
    PerturbationSpec bad2;
    bad2.magnitude = 1.5;
    CHECK_THROWS_AS(sensitivity_perturbation(data, bad2, 5, cfg), ConfigError);
    PerturbationSpec bad3;
    bad3.replications = 0;
    CHECK_THROWS_AS(sensitivity_perturbation(data, bad3, 5, cfg), ConfigError);

    CHECK_THROWS_AS(sensitivity_binning(data, 2, 5, cfg), ConfigError);
}
