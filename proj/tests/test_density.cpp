#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include "hinv/density.hpp"
#include "hinv/errors.hpp"
#include "hinv/hellinger.hpp"
#include "oracles.hpp"

using namespace hinv;

namespace {

ReturnMatrix make_market(const Eigen::MatrixXd& returns) {
    ReturnMatrix data;
    data.returns = returns;
    for (Eigen::Index i = 0; i < returns.cols(); ++i)
        data.labels.push_back("a" + std::to_string(i + 1));
    return data;
}

// Counting oracle: assign each point to a bin by scanning the edge list
// (no arithmetic index computation shared with the implementation).
std::vector<long> count_by_scan(const Eigen::VectorXd& series, const std::vector<double>& edges) {
    std::vector<long> counts(edges.size() - 1, 0);
    for (Eigen::Index i = 0; i < series.size(); ++i) {
        const double x = series[i];
        for (std::size_t b = 0; b + 1 < edges.size(); ++b) {
            const bool last = (b + 2 == edges.size());
            if (x >= edges[b] && (x < edges[b + 1] || (last && x <= edges[b + 1]))) {
                ++counts[b];
                break;
            }
        }
    }
    return counts;
}

}  // namespace

TEST_CASE("portfolio series basics") {
    Eigen::MatrixXd x(2, 2);
    x << 0.02, -0.02, 0.05, 0.01;
    ReturnMatrix data = make_market(x);

    Eigen::VectorXd e1(2);
    e1 << 0.0, 1.0;
    Eigen::VectorXd series = portfolio_series(data, PortfolioWeights{e1});
    CHECK(series[0] == -0.02);
    CHECK(series[1] == 0.01);

    Eigen::VectorXd half(2);
    half << 0.5, 0.5;
    series = portfolio_series(data, PortfolioWeights{half});
    CHECK(series[0] == doctest::Approx(0.0).epsilon(1e-18));

    Eigen::VectorXd bad(3);
    bad << 1.0, 0.0, 0.0;
    CHECK_THROWS_AS(portfolio_series(data, PortfolioWeights{bad}), DomainError);
}

TEST_CASE("portfolio series matches a double-loop oracle") {
    oracle::Gen gen(808);
    for (int rep = 0; rep < 200; ++rep) {
        const int t = gen.uniform_int(2, 80);
        const int n = gen.uniform_int(1, 6);
        Eigen::MatrixXd x(t, n);
        for (Eigen::Index i = 0; i < t; ++i)
            for (Eigen::Index j = 0; j < n; ++j) x(i, j) = gen.uniform(-0.1, 0.1);
        Eigen::VectorXd w(n);
        for (Eigen::Index j = 0; j < n; ++j) w[j] = gen.uniform(-1.0, 1.0);
        Eigen::VectorXd got = portfolio_series(make_market(x), PortfolioWeights{w});
        for (Eigen::Index i = 0; i < t; ++i) {
            double want = 0.0;
            for (Eigen::Index j = 0; j < n; ++j) want += w[j] * x(i, j);
            CHECK(std::abs(got[i] - want) < 1e-14);
        }
    }
}

TEST_CASE("two-point uniform binning") {
    Eigen::VectorXd series(2);
    series << 0.0, 1.0;
    EmpiricalDensity d = bin_density(series, 2);
    REQUIRE(d.bins() == 2);
    CHECK(d.edges[0] == 0.0);
    CHECK(d.edges[1] == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(d.edges[2] == 1.0);
    CHECK(d.amplitudes[0] == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(d.amplitudes[1] == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("binning matches the counting oracle and conserves mass") {
    oracle::Gen gen(31337);
    for (int rep = 0; rep < 200; ++rep) {
        const int t = gen.uniform_int(2, 400);
        const int bins = gen.uniform_int(2, 40);
        Eigen::VectorXd series(t);
        for (Eigen::Index i = 0; i < t; ++i) series[i] = gen.uniform(-0.3, 0.3);
        if (series.maxCoeff() <= series.minCoeff()) continue;

        EmpiricalDensity d = bin_density(series, bins);
        REQUIRE(static_cast<int>(d.bins()) == bins);
        std::vector<long> want = count_by_scan(series, d.edges);

        const double width = (series.maxCoeff() - series.minCoeff()) / bins;
        long total = 0;
        double mass = 0.0;
        for (std::size_t b = 0; b < d.bins(); ++b) {
            const double bin_width = d.edges[b + 1] - d.edges[b];
            const double count = d.amplitudes[b] * d.amplitudes[b] * t * width;
            CHECK(count == doctest::Approx(static_cast<double>(want[b])).epsilon(1e-9));
            total += want[b];
            mass += d.amplitudes[b] * d.amplitudes[b] * bin_width;
        }
        CHECK(total == t);  // every point in exactly one bin
        CHECK(mass == doctest::Approx(1.0).epsilon(1e-12));
        validate(d);
    }
}

TEST_CASE("binning is permutation invariant") {
    oracle::Gen gen(17);
    Eigen::VectorXd series(50);
    for (Eigen::Index i = 0; i < 50; ++i) series[i] = gen.normal();
    EmpiricalDensity a = bin_density(series, 9);
    Eigen::VectorXd shuffled = series.reverse();
    std::swap(shuffled[3], shuffled[20]);
    EmpiricalDensity b = bin_density(shuffled, 9);
    CHECK(a.edges == b.edges);
    CHECK(a.amplitudes == b.amplitudes);
}

TEST_CASE("shifting the series shifts edges and keeps amplitudes") {
    oracle::Gen gen(23);
    Eigen::VectorXd series(80);
    for (Eigen::Index i = 0; i < 80; ++i) series[i] = gen.uniform(-0.05, 0.05);
    const double shift = 0.37;
    EmpiricalDensity base = bin_density(series, 12);
    EmpiricalDensity moved = bin_density(series.array() + shift, 12);
    for (std::size_t i = 0; i < base.edges.size(); ++i)
        CHECK(moved.edges[i] == doctest::Approx(base.edges[i] + shift).epsilon(1e-12));
    for (std::size_t i = 0; i < base.amplitudes.size(); ++i)
        CHECK(moved.amplitudes[i] == doctest::Approx(base.amplitudes[i]).epsilon(1e-12));
}

TEST_CASE("degenerate input is rejected") {
    Eigen::VectorXd flat = Eigen::VectorXd::Constant(10, 0.01);
    CHECK_THROWS_WITH_AS(bin_density(flat, 5), doctest::Contains("zero-width"), DomainError);
    Eigen::VectorXd one(1);
    one << 0.5;
    CHECK_THROWS_AS(bin_density(one, 5), DomainError);
    Eigen::VectorXd two(2);
    two << 0.0, 1.0;
    CHECK_THROWS_AS(bin_density(two, 1), DomainError);
    CHECK_THROWS_AS(bin_density(two, 0), DomainError);
}

TEST_CASE("default bin count is ceil(sqrt(T)) floored at 2") {
    CHECK(default_bin_count(810) == 29);
    CHECK(default_bin_count(100) == 10);
    CHECK(default_bin_count(101) == 11);
    CHECK(default_bin_count(2) == 2);
    CHECK(default_bin_count(1) == 2);
}

TEST_CASE("binned standard normal sample is Hellinger-close to N(0,1)") {
    // 10^4 draws, 60 bins: the binned density should sit within H^2 < 0.01
    // of the generating Gaussian.
    oracle::Gen gen(2718);
    Eigen::VectorXd series(10000);
    for (Eigen::Index i = 0; i < series.size(); ++i) series[i] = gen.normal();
    EmpiricalDensity d = bin_density(series, 60);
    CHECK(hellinger_sq(d, NormalTarget{0.0, 1.0}) < 0.01);
}
