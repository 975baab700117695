// hinv: command line front end for the binned-Hellinger market invariant.
//
// Subcommands:
//   invariant            frontier scan, reports min-over-returns H^2
//   simulate             generate a synthetic market and write a price CSV
//   sensitivity-perturb  data-perturbation Monte-Carlo sensitivity
//   sensitivity-bins     bin-count (+/-1) sensitivity
//
// Exit codes: 0 success, 2 configuration/usage, 3 input parse,
// 4 numerical/domain failure, 5 I/O.

#include <CLI11.hpp>

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "hinv/density.hpp"
#include "hinv/errors.hpp"
#include "hinv/market_data.hpp"
#include "hinv/optimizer.hpp"
#include "hinv/report.hpp"
#include "hinv/sensitivity.hpp"
#include "hinv/version.hpp"

namespace {

using namespace hinv;

struct CommonOptions {
    std::string input_path;
    std::string simulate_spec;
    int grid_size = 50;
    std::string bins = "auto";
    int multistart = 0;  // 0 = auto (n + 2)
    std::uint64_t seed = 0;
    std::string format = "json";
    std::string output_path;
    int jobs = 0;  // 0 = all available processors
};

// Parses "dfs=4,3,3,2,T=810" into a SimulationSpec (seed filled by caller).
// Commas both separate the dfs list and the T key, so tokens without '='
// continue the list opened by the previous key.
SimulationSpec parse_simulation_spec(const std::string& text, std::uint64_t seed) {
    SimulationSpec spec;
    spec.seed = seed;
    bool have_T = false;
    std::string current_key;
    std::istringstream in(text);
    std::string token;
    while (std::getline(in, token, ',')) {
        std::string value = token;
        const std::size_t eq = token.find('=');
        if (eq != std::string::npos) {
            current_key = token.substr(0, eq);
            value = token.substr(eq + 1);
        }
        try {
            if (current_key == "dfs") {
                spec.degrees_of_freedom.push_back(std::stoi(value));
            } else if (current_key == "T") {
                spec.observations = std::stoi(value);
                have_T = true;
            } else {
                throw ConfigError("unknown key '" + current_key + "' in --simulate spec");
            }
        } catch (const std::invalid_argument&) {
            throw ConfigError("cannot parse '" + value + "' in --simulate spec");
        } catch (const std::out_of_range&) {
            throw ConfigError("value '" + value + "' out of range in --simulate spec");
        }
    }
    if (spec.degrees_of_freedom.empty() || !have_T)
        throw ConfigError("--simulate spec needs dfs=<list> and T=<observations>");
    validate(spec);
    return spec;
}

std::optional<int> parse_bins(const std::string& bins) {
    if (bins == "auto") return std::nullopt;
    int value = 0;
    try {
        value = std::stoi(bins);
    } catch (const std::exception&) {
        throw ConfigError("--bins expects 'auto' or an integer, got '" + bins + "'");
    }
    if (value < 2) throw ConfigError("--bins must be at least 2");
    return value;
}

int resolve_jobs(int jobs) {
    if (jobs > 0) return jobs;
    unsigned hw = std::thread::hardware_concurrency();
    return hw > 0 ? static_cast<int>(hw) : 1;
}

struct Market {
    ReturnMatrix data;
    std::string label;
    SimulationSpec sim;  // populated when simulated
    bool simulated = false;
};

Market load_market(const CommonOptions& opt) {
    const bool has_input = !opt.input_path.empty();
    const bool has_sim = !opt.simulate_spec.empty();
    if (has_input == has_sim)
        throw ConfigError("exactly one of --input and --simulate is required");
    Market market;
    if (has_sim) {
        market.sim = parse_simulation_spec(opt.simulate_spec, opt.seed);
        market.data = simulate_student_market(market.sim);
        market.label = "simulated";
        market.simulated = true;
    } else {
        market.data = load_prices_file(opt.input_path);
        market.label = std::filesystem::path(opt.input_path).stem().string();
    }
    return market;
}

OptimizerConfig make_optimizer_config(const CommonOptions& opt) {
    OptimizerConfig cfg;
    if (opt.multistart > 0) cfg.multistart_count = opt.multistart;
    cfg.bin_count = parse_bins(opt.bins);
    cfg.start_seed = opt.seed;
    validate(cfg);
    return cfg;
}

void write_market_config(JsonWriter& w, const CommonOptions& opt, const Market& market) {
    w.key("market");
    w.begin_object();
    if (market.simulated) {
        w.key("source");
        w.value("simulate");
        w.key("degrees_of_freedom");
        w.begin_array();
        for (int df : market.sim.degrees_of_freedom) w.value(df);
        w.end_array();
        w.key("observations");
        w.value(market.sim.observations);
    } else {
        w.key("source");
        w.value("file");
        w.key("path");
        w.value(opt.input_path);
        w.key("observations");
        w.value(static_cast<int>(market.data.observations()));
        w.key("assets");
        w.value(static_cast<int>(market.data.assets()));
    }
    w.key("label");
    w.value(market.label);
    w.end_object();
    w.key("seed");
    w.value(opt.seed);
    w.key("jobs");
    w.value(resolve_jobs(opt.jobs));
}

void emit(const CommonOptions& opt, const std::string& text) {
    if (opt.output_path.empty()) {
        std::cout << text;
        if (!text.empty() && text.back() != '\n') std::cout << '\n';
        return;
    }
    std::ofstream out(opt.output_path);
    if (!out) throw IoError("cannot open '" + opt.output_path + "' for writing");
    out << text;
    if (!text.empty() && text.back() != '\n') out << '\n';
    if (!out) throw IoError("failed writing '" + opt.output_path + "'");
}

ScanConfig scan_echo(const CommonOptions& opt, const OptimizerConfig& cfg,
                     const ReturnMatrix& data) {
    ScanConfig echo;
    echo.grid_size = opt.grid_size;
    echo.multistart_count =
        cfg.multistart_count ? *cfg.multistart_count : static_cast<int>(data.assets()) + 2;
    echo.max_iterations = cfg.max_iterations;
    echo.initial_step = cfg.initial_step;
    echo.step_shrink = cfg.step_shrink;
    echo.convergence_step = cfg.convergence_step;
    echo.bin_count = cfg.bin_count ? *cfg.bin_count : default_bin_count(data.observations());
    echo.bin_count_auto = !cfg.bin_count.has_value();
    echo.start_seed = cfg.start_seed;
    return echo;
}

int run_invariant(const CommonOptions& opt) {
    Market market = load_market(opt);
    OptimizerConfig cfg = make_optimizer_config(opt);
    InvariantReport report =
        frontier_scan(market.data, opt.grid_size, cfg, market.label, resolve_jobs(opt.jobs));

    if (opt.format == "csv") {
        emit(opt, invariant_csv(report));
    } else if (opt.format == "table") {
        emit(opt, invariant_table(report));
    } else {
        JsonWriter w;
        w.begin_object();
        w.key("meta");
        ReportMeta meta;
        meta.version = kVersion;
        write_meta(w, meta);
        w.key("config");
        w.begin_object();
        w.key("command");
        w.value("invariant");
        write_market_config(w, opt, market);
        w.key("scan");
        write_scan_config(w, report.config_echo);
        w.end_object();
        w.key("results");
        write_invariant_results(w, report);
        w.end_object();
        emit(opt, w.str());
    }
    return 0;
}

int run_simulate(const CommonOptions& opt) {
    if (opt.simulate_spec.empty()) throw ConfigError("simulate requires --simulate dfs=...,T=...");
    SimulationSpec spec = parse_simulation_spec(opt.simulate_spec, opt.seed);
    ReturnMatrix data = simulate_student_market(spec);

    // Rebuild a price path from the log-returns: p_0 = 100,
    // p_{t+1} = p_t * exp(r_t), one synthetic calendar day per row.
    using namespace std::chrono;
    std::ostringstream out;
    out << "date";
    for (const std::string& label : data.labels) out << ',' << label;
    out << '\n';
    std::vector<double> prices(static_cast<std::size_t>(data.assets()), 100.0);
    const sys_days start = sys_days(year{2000} / January / 1);
    for (Eigen::Index t = 0; t <= data.observations(); ++t) {
        const year_month_day date{start + days{t}};
        char buffer[16];
        std::snprintf(buffer, sizeof(buffer), "%04d-%02u-%02u", static_cast<int>(date.year()),
                      static_cast<unsigned>(date.month()), static_cast<unsigned>(date.day()));
        out << buffer;
        for (std::size_t i = 0; i < prices.size(); ++i) {
            if (t > 0) prices[i] *= std::exp(data.returns(t - 1, static_cast<Eigen::Index>(i)));
            out << ',' << format_double(prices[i]);
        }
        out << '\n';
    }
    emit(opt, out.str());
    return 0;
}

int run_sensitivity_perturb(const CommonOptions& opt, double fraction, double magnitude,
                            int replications) {
    Market market = load_market(opt);
    OptimizerConfig cfg = make_optimizer_config(opt);
    PerturbationSpec spec;
    spec.data_fraction = fraction;
    spec.magnitude = magnitude;
    spec.replications = replications;
    spec.seed = opt.seed;
    validate(spec);
    SensitivityReport report = sensitivity_perturbation(market.data, spec, opt.grid_size, cfg,
                                                        resolve_jobs(opt.jobs));

    if (opt.format == "csv") {
        emit(opt, sensitivity_csv(report, market.label));
    } else if (opt.format == "table") {
        emit(opt, sensitivity_table(report, market.label));
    } else {
        JsonWriter w;
        w.begin_object();
        w.key("meta");
        ReportMeta meta;
        meta.version = kVersion;
        write_meta(w, meta);
        w.key("config");
        w.begin_object();
        w.key("command");
        w.value("sensitivity-perturb");
        write_market_config(w, opt, market);
        w.key("perturbation");
        w.begin_object();
        w.key("data_fraction");
        w.value(spec.data_fraction);
        w.key("magnitude");
        w.value(spec.magnitude);
        w.key("replications");
        w.value(spec.replications);
        w.end_object();
        w.key("scan");
        write_scan_config(w, scan_echo(opt, cfg, market.data));
        w.end_object();
        w.key("results");
        write_sensitivity_results(w, report);
        w.end_object();
        emit(opt, w.str());
    }
    return 0;
}

int run_sensitivity_bins(const CommonOptions& opt) {
    Market market = load_market(opt);
    OptimizerConfig cfg = make_optimizer_config(opt);
    const int baseline_bins =
        cfg.bin_count ? *cfg.bin_count : default_bin_count(market.data.observations());
    SensitivityReport report = sensitivity_binning(market.data, baseline_bins, opt.grid_size,
                                                   cfg, resolve_jobs(opt.jobs));

    if (opt.format == "csv") {
        emit(opt, sensitivity_csv(report, market.label));
    } else if (opt.format == "table") {
        emit(opt, sensitivity_table(report, market.label));
    } else {
        JsonWriter w;
        w.begin_object();
        w.key("meta");
        ReportMeta meta;
        meta.version = kVersion;
        write_meta(w, meta);
        w.key("config");
        w.begin_object();
        w.key("command");
        w.value("sensitivity-bins");
        write_market_config(w, opt, market);
        w.key("baseline_bin_count");
        w.value(baseline_bins);
        w.key("scan");
        write_scan_config(w, scan_echo(opt, cfg, market.data));
        w.end_object();
        w.key("results");
        write_sensitivity_results(w, report);
        w.end_object();
        emit(opt, w.str());
    }
    return 0;
}

void add_market_options(CLI::App* cmd, CommonOptions& opt) {
    cmd->add_option("--input", opt.input_path, "Price CSV (date column + one column per asset)");
    cmd->add_option("--simulate", opt.simulate_spec,
                    "Synthetic Student-t market, e.g. dfs=4,3,3,2,T=810");
    cmd->add_option("--seed", opt.seed, "Root seed for all randomness (streams are derived)");
    cmd->add_option("--output", opt.output_path, "Write the report here instead of stdout");
}

void add_scan_options(CLI::App* cmd, CommonOptions& opt) {
    cmd->add_option("--grid", opt.grid_size, "Number of target returns on the frontier grid")
        ->check(CLI::PositiveNumber);
    cmd->add_option("--bins", opt.bins, "Histogram bins: 'auto' (ceil(sqrt(T))) or an integer");
    cmd->add_option("--multistart", opt.multistart,
                    "Optimizer starts per grid point (default: assets + 2)")
        ->check(CLI::PositiveNumber);
    cmd->add_option("--format", opt.format, "Report format")
        ->check(CLI::IsMember({"json", "csv", "table"}));
    cmd->add_option("--jobs", opt.jobs, "Worker threads (default: all processors)")
        ->check(CLI::PositiveNumber);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Minimum binned squared Hellinger distance between a long-only portfolio "
                 "and its frontier-matched Gaussian, scanned over target returns."};
    app.require_subcommand(1);
    app.footer("Exit codes: 0 success, 2 configuration/usage error, 3 input parse error,\n"
               "4 numerical or domain failure, 5 I/O error.");

    CommonOptions opt;
    double fraction = 0.05;
    double magnitude = 0.05;
    int replications = 1000;

    CLI::App* invariant = app.add_subcommand(
        "invariant", "Scan the frontier and report the minimum squared Hellinger distance");
    add_market_options(invariant, opt);
    add_scan_options(invariant, opt);

    CLI::App* simulate =
        app.add_subcommand("simulate", "Generate a synthetic market and write its price CSV");
    simulate->add_option("--simulate", opt.simulate_spec,
                         "Market spec, e.g. dfs=4,3,3,2,T=810")
        ->required();
    simulate->add_option("--seed", opt.seed, "Root seed");
    simulate->add_option("--output", opt.output_path, "Price CSV path (default stdout)");

    CLI::App* perturb = app.add_subcommand(
        "sensitivity-perturb", "Invariant sensitivity to random multiplicative data changes");
    add_market_options(perturb, opt);
    add_scan_options(perturb, opt);
    perturb->add_option("--fraction", fraction, "Fraction of entries perturbed per replication")
        ->check(CLI::Range(0.0, 1.0));
    perturb->add_option("--magnitude", magnitude, "Max relative change per perturbed entry")
        ->check(CLI::Range(0.0, 1.0));
    perturb->add_option("--replications", replications, "Monte-Carlo replications")
        ->check(CLI::PositiveNumber);

    CLI::App* bins = app.add_subcommand(
        "sensitivity-bins", "Invariant sensitivity to a +/-1 change of the histogram bin count");
    add_market_options(bins, opt);
    add_scan_options(bins, opt);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (invariant->parsed()) return run_invariant(opt);
        if (simulate->parsed()) return run_simulate(opt);
        if (perturb->parsed()) return run_sensitivity_perturb(opt, fraction, magnitude,
                                                              replications);
        if (bins->parsed()) return run_sensitivity_bins(opt);
        return 2;
    } catch (const ConfigError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const ParseError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 3;
    } catch (const IoError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 5;
    } catch (const DomainError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 4;
    } catch (const NumericalError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 4;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 4;
    }
}
