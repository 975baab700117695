#include "hinv/market_data.hpp"

#include <Eigen/Cholesky>
#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <numeric>
#include <sstream>

#include "hinv/errors.hpp"
#include "hinv/rng.hpp"

namespace hinv {

namespace {

std::vector<std::string> split_line(const std::string& line, char delimiter) {
    std::vector<std::string> cells;
    std::string cell;
    std::istringstream in(line);
    while (std::getline(in, cell, delimiter)) cells.push_back(cell);
    if (!line.empty() && line.back() == delimiter) cells.emplace_back();
    return cells;
}

void strip_cr(std::string& line) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
}

bool is_iso_date(const std::string& s) {
    if (s.size() != 10 || s[4] != '-' || s[7] != '-') return false;
    for (std::size_t i : {0u, 1u, 2u, 3u, 5u, 6u, 8u, 9u})
        if (s[i] < '0' || s[i] > '9') return false;
    int month = (s[5] - '0') * 10 + (s[6] - '0');
    int day = (s[8] - '0') * 10 + (s[9] - '0');
    return month >= 1 && month <= 12 && day >= 1 && day <= 31;
}

double parse_price(const std::string& cell, std::size_t row, std::size_t col) {
    std::size_t begin = cell.find_first_not_of(" \t");
    std::size_t end = cell.find_last_not_of(" \t");
    if (begin == std::string::npos)
        throw DomainError("missing price value at row " + std::to_string(row) + ", column " +
                          std::to_string(col));
    double value = 0.0;
    auto [ptr, ec] = std::from_chars(cell.data() + begin, cell.data() + end + 1, value);
    if (ec != std::errc{} || ptr != cell.data() + end + 1)
        throw ParseError("cannot parse price '" + cell + "'", row, col);
    if (!(value > 0.0) || !std::isfinite(value))
        throw DomainError("non-positive price " + cell + " at row " + std::to_string(row) +
                          ", column " + std::to_string(col));
    return value;
}

}  // namespace

ReturnMatrix load_prices(std::istream& csv, const PriceCsvFormat& format) {
    std::string line;
    if (!std::getline(csv, line)) throw ParseError("empty CSV: no header row");
    strip_cr(line);
    if (line.size() >= 3 && static_cast<unsigned char>(line[0]) == 0xEF &&
        static_cast<unsigned char>(line[1]) == 0xBB && static_cast<unsigned char>(line[2]) == 0xBF)
        line.erase(0, 3);  // UTF-8 BOM

    const std::vector<std::string> header = split_line(line, format.delimiter);
    std::size_t date_col = header.size();
    for (std::size_t i = 0; i < header.size(); ++i)
        if (header[i] == format.date_column) {
            date_col = i;
            break;
        }
    if (date_col == header.size())
        throw ParseError("header has no '" + format.date_column + "' column", 1, 1);

    // Price columns: everything but the date column, or the requested subset.
    std::vector<std::size_t> price_cols;
    std::vector<std::string> labels;
    if (format.asset_columns) {
        for (const std::string& name : *format.asset_columns) {
            auto it = std::find(header.begin(), header.end(), name);
            if (it == header.end())
                throw ParseError("header has no '" + name + "' column", 1, 1);
            price_cols.push_back(static_cast<std::size_t>(it - header.begin()));
            labels.push_back(name);
        }
    } else {
        for (std::size_t i = 0; i < header.size(); ++i)
            if (i != date_col) {
                price_cols.push_back(i);
                labels.push_back(header[i]);
            }
    }
    if (price_cols.empty()) throw ParseError("CSV has no price columns", 1, 1);

    struct Row {
        std::string date;
        std::vector<double> prices;
    };
    std::vector<Row> rows;
    std::size_t line_no = 1;
    while (std::getline(csv, line)) {
        ++line_no;
        strip_cr(line);
        if (line.empty()) continue;
        std::vector<std::string> cells = split_line(line, format.delimiter);
        if (cells.size() != header.size())
            throw ParseError("expected " + std::to_string(header.size()) + " cells, found " +
                                 std::to_string(cells.size()),
                             line_no, cells.size());
        Row row;
        row.date = cells[date_col];
        if (!is_iso_date(row.date))
            throw ParseError("invalid ISO-8601 date '" + row.date + "'", line_no, date_col + 1);
        row.prices.reserve(price_cols.size());
        for (std::size_t j = 0; j < price_cols.size(); ++j)
            row.prices.push_back(parse_price(cells[price_cols[j]], line_no, price_cols[j] + 1));
        rows.push_back(std::move(row));
    }
    if (rows.size() < 2) throw DomainError("need at least 2 data rows to form returns");

    std::stable_sort(rows.begin(), rows.end(),
                     [](const Row& a, const Row& b) { return a.date < b.date; });
    for (std::size_t i = 0; i + 1 < rows.size(); ++i)
        if (rows[i].date == rows[i + 1].date)
            throw DomainError("duplicate date " + rows[i].date);

    const auto t = static_cast<Eigen::Index>(rows.size() - 1);
    const auto n = static_cast<Eigen::Index>(price_cols.size());
    ReturnMatrix data;
    data.labels = std::move(labels);
    data.returns.resize(t, n);
    for (Eigen::Index k = 0; k < t; ++k)
        for (Eigen::Index j = 0; j < n; ++j)
            data.returns(k, j) = std::log(rows[k + 1].prices[j] / rows[k].prices[j]);
    validate(data);
    return data;
}

ReturnMatrix load_prices_file(const std::string& path, const PriceCsvFormat& format) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open '" + path + "' for reading");
    return load_prices(in, format);
}

Eigen::MatrixXd random_correlation(int n, std::uint64_t seed) {
    if (n < 1) throw DomainError("correlation matrix needs n >= 1");
    Rng rng = Rng::stream(seed, "correlation");
    Eigen::MatrixXd a(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) a(i, j) = rng.normal();

    // G = A A^T + n I is positive definite for every draw.
    Eigen::MatrixXd gram = a * a.transpose();
    gram.diagonal().array() += static_cast<double>(n);

    Eigen::MatrixXd c(n, n);
    for (int i = 0; i < n; ++i) {
        c(i, i) = 1.0;
        for (int j = 0; j < i; ++j) {
            double value = gram(i, j) / std::sqrt(gram(i, i) * gram(j, j));
            c(i, j) = value;
            c(j, i) = value;
        }
    }
    return c;
}

ReturnMatrix simulate_student_market(const SimulationSpec& spec) {
    validate(spec);
    const int n = static_cast<int>(spec.degrees_of_freedom.size());
    return simulate_student_market(spec, random_correlation(n, spec.seed));
}

ReturnMatrix simulate_student_market(const SimulationSpec& spec,
                                     const Eigen::MatrixXd& correlation) {
    validate(spec);
    const auto n = static_cast<Eigen::Index>(spec.degrees_of_freedom.size());
    if (correlation.rows() != n || correlation.cols() != n)
        throw DomainError("correlation matrix size does not match asset count");

    Eigen::LLT<Eigen::MatrixXd> llt(correlation);
    if (llt.info() != Eigen::Success)
        throw NumericalError("internal: correlation matrix is not positive definite");
    const Eigen::MatrixXd chol = llt.matrixL();

    Rng rng = Rng::stream(spec.seed, "student");
    ReturnMatrix data;
    data.returns.resize(spec.observations, n);
    Eigen::VectorXd z(n);
    for (int t = 0; t < spec.observations; ++t) {
        for (Eigen::Index i = 0; i < n; ++i)
            z[i] = rng.student_t(spec.degrees_of_freedom[static_cast<std::size_t>(i)]);
        data.returns.row(t) = (chol * z).transpose();
    }
    data.labels.reserve(static_cast<std::size_t>(n));
    for (Eigen::Index i = 0; i < n; ++i)
        data.labels.push_back("a" + std::to_string(i + 1));
    validate(data);
    return data;
}

ReturnMatrix simulate_gaussian_market(int assets, int observations, std::uint64_t seed) {
    if (assets < 1) throw DomainError("need at least one asset");
    if (observations < 2) throw DomainError("need at least 2 observations");

    Eigen::MatrixXd correlation = random_correlation(assets, seed);
    Eigen::LLT<Eigen::MatrixXd> llt(correlation);
    if (llt.info() != Eigen::Success)
        throw NumericalError("internal: correlation matrix is not positive definite");
    const Eigen::MatrixXd chol = llt.matrixL();

    Rng rng = Rng::stream(seed, "gaussian");
    ReturnMatrix data;
    data.returns.resize(observations, assets);
    Eigen::VectorXd z(assets);
    for (int t = 0; t < observations; ++t) {
        for (int i = 0; i < assets; ++i) z[i] = rng.normal();
        data.returns.row(t) = (chol * z).transpose();
    }
    data.labels.reserve(static_cast<std::size_t>(assets));
    for (int i = 0; i < assets; ++i) data.labels.push_back("a" + std::to_string(i + 1));
    validate(data);
    return data;
}

}  // namespace hinv
