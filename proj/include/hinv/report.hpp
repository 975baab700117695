#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "hinv/types.hpp"

namespace hinv {

/// Doubles in reports carry 17 significant digits so every value survives a
/// round trip through text.
std::string format_double(double v);

/// Minimal streaming JSON emitter with fixed key order (insertion order) and
/// deterministic number formatting; reports built twice from the same data
/// are byte-identical.
class JsonWriter {
public:
    void begin_object();
    void end_object();
    void begin_array();
    void end_array();
    void key(std::string_view name);
    void value(double v);
    void value(int v);
    void value(std::int64_t v);
    void value(std::uint64_t v);
    void value(bool v);
    void value(std::string_view v);
    void value(const char* v) { value(std::string_view(v)); }
    void null_value();

    const std::string& str() const { return out_; }

private:
    void separator();
    void indent();

    std::string out_;
    std::vector<bool> first_in_scope_{true};
    bool after_key_ = false;
    int depth_ = 0;
};

/// Tool-level metadata stamped into every report.
struct ReportMeta {
    std::string tool = "hinv";
    std::string version;
    std::string rng = "pcg32 xsh-rr 64/32, box-muller normals, labeled streams";
    std::string covariance = "sample covariance, 1/(T-1)";
    std::string markowitz_ridge = "1e-12 * trace(cov)/n on the diagonal";
};

void write_meta(JsonWriter& w, const ReportMeta& meta);
void write_scan_config(JsonWriter& w, const ScanConfig& config);
void write_invariant_results(JsonWriter& w, const InvariantReport& report);
void write_sensitivity_results(JsonWriter& w, const SensitivityReport& report);

/// Results serialized alone (used for determinism comparisons).
std::string invariant_results_json(const InvariantReport& report);

/// One row per frontier point; weight vectors are omitted (JSON keeps them).
std::string invariant_csv(const InvariantReport& report);

/// One-row table `market | H^2`.
std::string invariant_table(const InvariantReport& report);

std::string sensitivity_csv(const SensitivityReport& report, const std::string& market_label);

/// Two-row table with `Percentages` and `Absolute value` rows.
std::string sensitivity_table(const SensitivityReport& report, const std::string& market_label);

}  // namespace hinv
