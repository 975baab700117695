#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <optional>
#include <vector>

#include "hinv/types.hpp"

namespace hinv {

/// Layout of a price CSV. The default expects a header
/// `date,<label1>,...,<labeln>` with ISO-8601 dates, '.' decimal points and
/// comma separators.
struct PriceCsvFormat {
    std::string date_column = "date";
    char delimiter = ',';
    /// When set, only these price columns are used, in this order.
    std::optional<std::vector<std::string>> asset_columns;
};

/// Parses a price CSV into log-returns: returns[t][i] = ln(p[t+1][i] / p[t][i])
/// with rows sorted ascending by date. Malformed cells raise ParseError with
/// the row and column; non-positive or missing prices raise DomainError
/// (no imputation).
ReturnMatrix load_prices(std::istream& csv, const PriceCsvFormat& format = {});

/// Convenience wrapper opening `path`; raises IoError when unreadable.
ReturnMatrix load_prices_file(const std::string& path, const PriceCsvFormat& format = {});

/// Random correlation matrix: A has i.i.d. standard normal entries,
/// G = A A^T + n I, C = D^{-1/2} G D^{-1/2} with D = diag(G). The n*I ridge
/// keeps C positive definite for every seed.
Eigen::MatrixXd random_correlation(int n, std::uint64_t seed);

/// Correlated Student-t market: draws a random correlation matrix, Cholesky
/// factor L, then rows x = L z with z independent Student-t variates of the
/// given degrees of freedom. Deterministic per seed.
ReturnMatrix simulate_student_market(const SimulationSpec& spec);

/// Same, with the correlation matrix supplied by the caller (test hook).
ReturnMatrix simulate_student_market(const SimulationSpec& spec,
                                     const Eigen::MatrixXd& correlation);

/// Correlated exact-Gaussian market sharing the Student-t market's
/// correlation stream, so a (seed, n) pair yields the same correlation matrix
/// in both.
ReturnMatrix simulate_gaussian_market(int assets, int observations, std::uint64_t seed);

}  // namespace hinv
