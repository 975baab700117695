#include "hinv/report.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

namespace hinv {

std::string format_double(double v) {
    char buffer[64];
    std::snprintf(buffer, sizeof(buffer), "%.17g", v);
    return buffer;
}

void JsonWriter::separator() {
    if (after_key_) {
        after_key_ = false;
        return;
    }
    if (!first_in_scope_.back()) out_ += ',';
    first_in_scope_.back() = false;
    if (depth_ > 0) indent();
}

void JsonWriter::indent() {
    out_ += '\n';
    out_.append(static_cast<std::size_t>(depth_) * 2, ' ');
}

void JsonWriter::begin_object() {
    separator();
    out_ += '{';
    ++depth_;
    first_in_scope_.push_back(true);
}

void JsonWriter::end_object() {
    const bool empty = first_in_scope_.back();
    first_in_scope_.pop_back();
    --depth_;
    if (!empty) indent();
    out_ += '}';
}

void JsonWriter::begin_array() {
    separator();
    out_ += '[';
    ++depth_;
    first_in_scope_.push_back(true);
}

void JsonWriter::end_array() {
    const bool empty = first_in_scope_.back();
    first_in_scope_.pop_back();
    --depth_;
    if (!empty) indent();
    out_ += ']';
}

void JsonWriter::key(std::string_view name) {
    separator();
    out_ += '"';
    out_ += name;
    out_ += "\": ";
    after_key_ = true;
}

void JsonWriter::value(double v) {
    separator();
    if (std::isfinite(v)) {
        out_ += format_double(v);
    } else {
        out_ += "null";  // JSON has no NaN/Inf literal
    }
}

void JsonWriter::value(int v) {
    separator();
    out_ += std::to_string(v);
}

void JsonWriter::value(std::int64_t v) {
    separator();
    out_ += std::to_string(v);
}

void JsonWriter::value(std::uint64_t v) {
    separator();
    out_ += std::to_string(v);
}

void JsonWriter::value(bool v) {
    separator();
    out_ += v ? "true" : "false";
}

void JsonWriter::value(std::string_view v) {
    separator();
    out_ += '"';
    for (char c : v) {
        switch (c) {
            case '"': out_ += "\\\""; break;
            case '\\': out_ += "\\\\"; break;
            case '\n': out_ += "\\n"; break;
            case '\r': out_ += "\\r"; break;
            case '\t': out_ += "\\t"; break;
            default:
                if (static_cast<unsigned char>(c) < 0x20) {
                    char buffer[8];
                    std::snprintf(buffer, sizeof(buffer), "\\u%04x", c);
                    out_ += buffer;
                } else {
                    out_ += c;
                }
        }
    }
    out_ += '"';
}

void JsonWriter::null_value() {
    separator();
    out_ += "null";
}

void write_meta(JsonWriter& w, const ReportMeta& meta) {
    w.begin_object();
    w.key("tool");
    w.value(meta.tool);
    w.key("version");
    w.value(meta.version);
    w.key("rng");
    w.value(meta.rng);
    w.key("covariance");
    w.value(meta.covariance);
    w.key("markowitz_ridge");
    w.value(meta.markowitz_ridge);
    w.end_object();
}

void write_scan_config(JsonWriter& w, const ScanConfig& config) {
    w.begin_object();
    w.key("grid_size");
    w.value(config.grid_size);
    w.key("multistart_count");
    w.value(config.multistart_count);
    w.key("max_iterations");
    w.value(config.max_iterations);
    w.key("initial_step");
    w.value(config.initial_step);
    w.key("step_shrink");
    w.value(config.step_shrink);
    w.key("convergence_step");
    w.value(config.convergence_step);
    w.key("bin_count");
    w.value(config.bin_count);
    w.key("bin_count_auto");
    w.value(config.bin_count_auto);
    w.key("start_seed");
    w.value(config.start_seed);
    w.end_object();
}

namespace {

void write_weights(JsonWriter& w, const PortfolioWeights& weights) {
    w.begin_array();
    for (Eigen::Index i = 0; i < weights.w.size(); ++i) w.value(weights.w[i]);
    w.end_array();
}

}  // namespace

void write_invariant_results(JsonWriter& w, const InvariantReport& report) {
    w.begin_object();
    w.key("market");
    w.value(report.market_label);
    w.key("invariant_h2");
    w.value(report.invariant_h2);
    w.key("argmin_e");
    w.value(report.argmin_e);
    w.key("frontier");
    w.begin_array();
    for (const FrontierPoint& point : report.frontier) {
        w.begin_object();
        w.key("target_return");
        w.value(point.target_return);
        w.key("ok");
        w.value(point.ok);
        if (point.ok) {
            w.key("mv_variance");
            w.value(point.mv_variance);
            w.key("mv_weights");
            write_weights(w, point.mv_weights);
            w.key("hellinger_sq_min");
            w.value(point.hellinger_sq_min);
            w.key("hellinger_weights");
            write_weights(w, point.hellinger_weights);
        } else {
            w.key("error");
            w.value(point.error);
        }
        w.end_object();
    }
    w.end_array();
    w.end_object();
}

void write_sensitivity_results(JsonWriter& w, const SensitivityReport& report) {
    w.begin_object();
    w.key("baseline_h2");
    w.value(report.baseline_h2);
    w.key("mean_abs_change");
    w.value(report.mean_abs_change);
    w.key("mean_pct_change");
    w.value(report.mean_pct_change);
    w.key("replication_count");
    w.value(report.replication_count);
    w.key("failed_replications");
    w.value(report.failed_replications);
    w.key("per_replication_changes");
    w.begin_array();
    for (double change : report.per_replication_changes) w.value(change);
    w.end_array();
    w.end_object();
}

std::string invariant_results_json(const InvariantReport& report) {
    JsonWriter w;
    write_invariant_results(w, report);
    return w.str();
}

std::string invariant_csv(const InvariantReport& report) {
    std::ostringstream out;
    out << "market,target_return,ok,mv_variance,hellinger_sq_min\n";
    for (const FrontierPoint& point : report.frontier) {
        out << report.market_label << ',' << format_double(point.target_return) << ','
            << (point.ok ? "true" : "false") << ',';
        if (point.ok)
            out << format_double(point.mv_variance) << ','
                << format_double(point.hellinger_sq_min);
        else
            out << ',';
        out << '\n';
    }
    out << report.market_label << ",invariant,," << ',' << format_double(report.invariant_h2)
        << '\n';
    return out.str();
}

std::string invariant_table(const InvariantReport& report) {
    std::ostringstream out;
    out << "market | H^2\n";
    out << report.market_label << " | " << format_double(report.invariant_h2) << '\n';
    return out.str();
}

std::string sensitivity_csv(const SensitivityReport& report, const std::string& market_label) {
    std::ostringstream out;
    out << "market,baseline_h2,mean_abs_change,mean_pct_change,replications,failed\n";
    out << market_label << ',' << format_double(report.baseline_h2) << ','
        << format_double(report.mean_abs_change) << ',' << format_double(report.mean_pct_change)
        << ',' << report.replication_count << ',' << report.failed_replications << '\n';
    return out.str();
}

std::string sensitivity_table(const SensitivityReport& report, const std::string& market_label) {
    std::ostringstream out;
    out << " | " << market_label << '\n';
    out << "Percentages | " << format_double(report.mean_pct_change) << "%\n";
    out << "Absolute value | " << format_double(report.mean_abs_change) << '\n';
    return out.str();
}

}  // namespace hinv
