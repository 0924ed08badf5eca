// Batch front end: load a model config, run simulations and estimator
// pipelines, emit CSV/text reports under a per-run output directory.

#include <chrono>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "lmm/config_io.hpp"
#include "lmm/errors.hpp"
#include "lmm/estimators.hpp"
#include "lmm/io.hpp"
#include "lmm/simulate.hpp"
#include "lmm/validate.hpp"

namespace {

namespace fs = std::filesystem;

struct CliOptions {
    std::string config_path;
    std::string out_root = "out";
    int rate = 1;
    double horizon = 0.0; // 0 = first fixing date T_0
    std::int64_t paths = 100'000;
    int steps_per_year = 64;
    std::uint64_t seed = 42;
    bool antithetic = false;
    std::string v_grid;             // "lo:hi:count", empty = relative default
    std::string measure = "terminal"; // terminal | own
    std::string sampler = "euler";    // euler | frozen
    std::string quantiles = "0.99:0.9999";
    std::string thresholds; // "se:share:drift"
};

std::vector<double> split_numbers(const std::string& text, char sep, std::size_t count,
                                  const std::string& what) {
    std::vector<double> out;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        const std::size_t next = text.find(sep, pos);
        const std::string tok = text.substr(pos, next == std::string::npos ? next : next - pos);
        try {
            out.push_back(std::stod(tok));
        } catch (const std::exception&) {
            throw lmm::DomainError(what + ": cannot parse '" + tok + "'");
        }
        if (next == std::string::npos)
            break;
        pos = next + 1;
    }
    if (out.size() != count)
        throw lmm::DomainError(what + ": expected " + std::to_string(count) +
                               " colon-separated values");
    return out;
}

std::vector<double> make_v_grid(const CliOptions& opt, double theoretical) {
    double lo, hi;
    std::size_t count;
    if (opt.v_grid.empty()) {
        lo = 0.16 * theoretical;
        hi = 2.0 * theoretical;
        count = 47;
    } else {
        const std::vector<double> parts = split_numbers(opt.v_grid, ':', 3, "--v-grid");
        lo = parts[0];
        hi = parts[1];
        count = static_cast<std::size_t>(parts[2]);
        if (count < 1 || parts[2] != static_cast<double>(count))
            throw lmm::DomainError("--v-grid: count must be a positive integer");
    }
    std::vector<double> grid(count);
    for (std::size_t i = 0; i < count; ++i)
        grid[i] = (count == 1) ? lo
                               : lo + (hi - lo) * static_cast<double>(i) /
                                          static_cast<double>(count - 1);
    return grid;
}

lmm::ScanThresholds make_thresholds(const CliOptions& opt) {
    lmm::ScanThresholds th;
    if (!opt.thresholds.empty()) {
        const std::vector<double> parts =
            split_numbers(opt.thresholds, ':', 3, "--thresholds");
        th.max_rel_std_error = parts[0];
        th.max_share = parts[1];
        th.max_doubling_drift = parts[2];
    }
    return th;
}

fs::path make_run_dir(const CliOptions& opt, const std::string& command) {
    const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&now, &tm);
    char stamp[32];
    std::strftime(stamp, sizeof(stamp), "%Y%m%d-%H%M%S", &tm);
    fs::path dir = fs::path(opt.out_root) /
                   (command + "-" + stamp + "-" + std::to_string(opt.seed));
    fs::path candidate = dir;
    for (int k = 1; fs::exists(candidate); ++k)
        candidate = dir.string() + "-" + std::to_string(k);
    fs::create_directories(candidate);
    return candidate;
}

// resolved run spec, reproducibility record; deliberately no wall-clock entry
// so identical runs produce identical files
void write_manifest(const fs::path& dir, const CliOptions& opt, const std::string& command,
                    double horizon, const std::vector<double>& v_grid) {
    nlohmann::ordered_json j;
    j["command"] = command;
    j["config"] = opt.config_path;
    j["rate"] = opt.rate;
    j["horizon"] = horizon;
    j["paths"] = opt.paths;
    j["steps_per_year"] = opt.steps_per_year;
    j["seed"] = opt.seed;
    j["antithetic"] = opt.antithetic;
    j["measure"] = opt.measure;
    j["sampler"] = opt.sampler;
    j["quantiles"] = opt.quantiles;
    const lmm::ScanThresholds th = make_thresholds(opt);
    j["thresholds"] = {th.max_rel_std_error, th.max_share, th.max_doubling_drift};
    if (!v_grid.empty())
        j["v_grid"] = v_grid;
    std::ofstream(dir / "manifest.json") << j.dump(2) << "\n";
}

double resolve_horizon(const CliOptions& opt, const lmm::ModelConfig& config) {
    return (opt.horizon > 0.0) ? opt.horizon : config.tenor().date(0);
}

lmm::SimulationPlan make_plan(const CliOptions& opt, double horizon) {
    lmm::SimulationPlan plan;
    plan.horizon = horizon;
    plan.steps_per_year = opt.steps_per_year;
    plan.n_paths = opt.paths;
    plan.seed = opt.seed;
    plan.antithetic = opt.antithetic;
    return plan;
}

// Scan source over the full simulation (prefix property: path p is a pure
// function of (seed, p), so a longer run extends a shorter one).
lmm::SampleSource euler_source(const lmm::ModelConfig& config, const CliOptions& opt,
                               double horizon, bool own_measure) {
    return [&config, opt, horizon, own_measure](std::int64_t n) {
        lmm::SimulationPlan plan = make_plan(opt, horizon);
        plan.n_paths = n;
        const lmm::TerminalSample sample = lmm::simulate_terminal_measure(config, plan);
        lmm::WeightedSample ws;
        ws.values = sample.rate_column(opt.rate);
        if (own_measure)
            ws.weights = lmm::rn_weights(sample, config, lmm::MeasureId{opt.rate});
        return ws;
    };
}

lmm::SampleSource frozen_source(const lmm::ModelConfig& config, const CliOptions& opt,
                                double horizon) {
    return [&config, opt, horizon](std::int64_t n) {
        lmm::WeightedSample ws;
        ws.values = lmm::sample_frozen_drift(config, opt.rate, horizon, n, opt.seed);
        return ws;
    };
}

int run_simulate(const CliOptions& opt) {
    const lmm::ModelConfig config = lmm::load_config(opt.config_path);
    const double horizon = resolve_horizon(opt, config);
    const lmm::TerminalSample sample =
        lmm::simulate_terminal_measure(config, make_plan(opt, horizon));
    const fs::path dir = make_run_dir(opt, "simulate");
    write_manifest(dir, opt, "simulate", horizon, {});
    std::ofstream os(dir / "sample.csv");
    lmm::write_terminal_sample_csv(os, sample);
    std::cout << "simulate: wrote " << (dir / "sample.csv").string() << "\n";
    return 0;
}

int run_moment_scan(const CliOptions& opt) {
    const lmm::ModelConfig config = lmm::load_config(opt.config_path);
    const double horizon = resolve_horizon(opt, config);
    const double theoretical =
        lmm::critical_exponent(config.vols(), opt.rate, horizon);
    const std::vector<double> grid = make_v_grid(opt, theoretical);

    if (opt.sampler == "frozen" && opt.measure == "own")
        throw lmm::DomainError("moment-scan: the frozen sampler draws one rate only; "
                               "reweighting to its own measure needs --sampler euler");
    const lmm::SampleSource source =
        (opt.sampler == "frozen") ? frozen_source(config, opt, horizon)
                                  : euler_source(config, opt, horizon, opt.measure == "own");

    const lmm::MomentScanReport report = lmm::scan_critical_exponent(
        source, grid, make_thresholds(opt), opt.paths, theoretical);

    const fs::path dir = make_run_dir(opt, "moment-scan");
    write_manifest(dir, opt, "moment-scan", horizon, grid);
    {
        std::ofstream os(dir / "scan.csv");
        lmm::write_scan_csv(os, report);
    }
    {
        std::ofstream os(dir / "report.txt");
        lmm::write_scan_text(os, report);
    }
    lmm::write_scan_text(std::cout, report);
    std::cout << "moment-scan: wrote " << (dir / "scan.csv").string() << "\n";
    return 0;
}

int run_tail_report(const CliOptions& opt) {
    const lmm::ModelConfig config = lmm::load_config(opt.config_path);
    const double horizon = resolve_horizon(opt, config);
    const std::vector<double> q = split_numbers(opt.quantiles, ':', 2, "--quantiles");

    std::vector<double> values, weights;
    if (opt.sampler == "frozen") {
        values = lmm::sample_frozen_drift(config, opt.rate, horizon, opt.paths, opt.seed);
    } else {
        const lmm::TerminalSample sample =
            lmm::simulate_terminal_measure(config, make_plan(opt, horizon));
        values = sample.rate_column(opt.rate);
        if (opt.measure == "own")
            weights = lmm::rn_weights(sample, config, lmm::MeasureId{opt.rate});
    }
    const lmm::TailFitReport report = lmm::fit_tail_slope(values, weights, q[0], q[1]);

    const fs::path dir = make_run_dir(opt, "tail-report");
    write_manifest(dir, opt, "tail-report", horizon, {});
    std::ofstream os(dir / "tail.csv");
    lmm::write_tail_csv(os, report);
    std::cout << "tail-report: slope " << lmm::format_double(report.slope) << " (R2 "
              << lmm::format_double(report.r_squared) << "), wrote "
              << (dir / "tail.csv").string() << "\n";
    return 0;
}

int run_validate(const CliOptions& opt) {
    const lmm::ModelConfig config = lmm::load_config(opt.config_path);
    const double horizon = resolve_horizon(opt, config);
    lmm::ValidationSettings settings;
    settings.rate = opt.rate;
    const lmm::ValidationReport report =
        lmm::run_validation(config, make_plan(opt, horizon), settings);

    const fs::path dir = make_run_dir(opt, "validate");
    write_manifest(dir, opt, "validate", horizon, {});
    std::ofstream os(dir / "validate.csv");
    lmm::write_validation_csv(os, report);
    lmm::write_validation_csv(std::cout, report);
    if (!report.all_passed()) {
        std::cout << "E_CHECK_FAIL validation checks failed" << "\n";
        return 5;
    }
    std::cout << "validate: all checks passed, wrote " << (dir / "validate.csv").string()
              << "\n";
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Log-normal LIBOR market model Monte Carlo engine and "
                 "critical-moment verification harness"};
    app.require_subcommand(1);

    CliOptions opt;
    std::string command;
    for (const auto& name : {"simulate", "moment-scan", "tail-report", "validate"}) {
        CLI::App* sub = app.add_subcommand(name);
        sub->add_option("--config", opt.config_path, "model config JSON")->required();
        sub->add_option("--out", opt.out_root, "output root directory");
        sub->add_option("--rate", opt.rate, "rate index n (1-based)");
        sub->add_option("--horizon", opt.horizon, "observation time t* (default: T_0)");
        sub->add_option("--paths", opt.paths, "Monte Carlo path count");
        sub->add_option("--steps-per-year", opt.steps_per_year, "log-Euler steps per year");
        sub->add_option("--seed", opt.seed, "random seed");
        sub->add_flag("--antithetic", opt.antithetic, "antithetic path pairing");
        sub->add_option("--v-grid", opt.v_grid, "scan grid lo:hi:count");
        sub->add_option("--measure", opt.measure, "terminal | own")
            ->check(CLI::IsMember({"terminal", "own"}));
        sub->add_option("--sampler", opt.sampler, "euler | frozen")
            ->check(CLI::IsMember({"euler", "frozen"}));
        sub->add_option("--quantiles", opt.quantiles, "tail window lo:hi");
        sub->add_option("--thresholds", opt.thresholds, "scan thresholds se:share:drift");
        sub->callback([&command, name]() { command = name; });
    }

    CLI11_PARSE(app, argc, argv);

    try {
        if (command == "simulate")
            return run_simulate(opt);
        if (command == "moment-scan")
            return run_moment_scan(opt);
        if (command == "tail-report")
            return run_tail_report(opt);
        return run_validate(opt);
    } catch (const lmm::ConfigError& e) {
        std::cout << "E_CONFIG " << e.what() << "\n";
        return 2;
    } catch (const lmm::DomainError& e) {
        std::cout << "E_DOMAIN " << e.what() << "\n";
        return 3;
    } catch (const lmm::BracketError& e) {
        std::cout << "E_BRACKET " << e.what() << "\n";
        return 4;
    }
}
