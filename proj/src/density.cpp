#include "hinv/density.hpp"

#include <cmath>

#include "hinv/errors.hpp"

namespace hinv {

Eigen::VectorXd portfolio_series(const ReturnMatrix& data, const PortfolioWeights& weights) {
    validate(data);
    if (weights.w.size() != data.assets())
        throw DomainError("weight vector length does not match asset count");
    return data.returns * weights.w;
}

int default_bin_count(Eigen::Index observations) {
    int k = static_cast<int>(std::ceil(std::sqrt(static_cast<double>(observations))));
    return k < 2 ? 2 : k;
}

EmpiricalDensity bin_density(const Eigen::VectorXd& series, int bin_count) {
    const Eigen::Index t = series.size();
    if (t < 2) throw DomainError("bin_density needs a series of length >= 2");
    if (bin_count < 2) throw DomainError("bin_density needs at least 2 bins");

    const double lo = series.minCoeff();
    const double hi = series.maxCoeff();
    if (!std::isfinite(lo) || !std::isfinite(hi))
        throw DomainError("series contains a non-finite value");
    if (!(hi > lo)) throw DomainError("zero-width support: series has no spread");

    const int m = bin_count;
    const double width = (hi - lo) / static_cast<double>(m);

    EmpiricalDensity density;
    density.edges.resize(m + 1);
    for (int i = 0; i <= m; ++i)
        density.edges[i] = lo + width * static_cast<double>(i);
    density.edges[m] = hi;  // pin the last edge to the sample max exactly

    std::vector<std::int64_t> counts(m, 0);
    for (Eigen::Index k = 0; k < t; ++k) {
        auto idx = static_cast<std::int64_t>((series[k] - lo) / width);
        if (idx < 0) idx = 0;
        if (idx >= m) idx = m - 1;  // the last bin owns its right edge
        ++counts[static_cast<std::size_t>(idx)];
    }

    density.amplitudes.resize(m);
    const double total = static_cast<double>(t);
    for (int i = 0; i < m; ++i)
        density.amplitudes[i] = std::sqrt(static_cast<double>(counts[i]) / (total * width));
    return density;
}

}  // namespace hinv
