#include "hrsync/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>

#include "hrsync/config.hpp"
#include "hrsync/experiments.hpp"
#include "hrsync/output.hpp"

namespace hrsync {

namespace {

struct Options {
    std::string config_path;
    std::string out_dir;
    bool quiet = false;
    std::optional<std::uint64_t> seed;
};

RunConfig load_config(const Options& opts)
{
    std::ifstream in(opts.config_path);
    if (!in) throw ConfigError(0, "cannot read config file '" + opts.config_path + "'");
    std::stringstream text;
    text << in.rdbuf();
    RunConfig config = parse_run_config(text.str());
    if (opts.seed) config.initial.seed = *opts.seed;
    return config;
}

std::optional<std::filesystem::path> output_dir(const Options& opts)
{
    if (opts.out_dir.empty()) return std::nullopt;
    std::filesystem::path dir(opts.out_dir);
    std::filesystem::create_directories(dir);
    return dir;
}

int finish(const ExperimentReport& report, const Options& opts, std::ostream& out,
           std::ostream& err, bool report_to_stdout = true)
{
    if (report_to_stdout) write_report(report, out);
    if (const auto dir = output_dir(opts)) {
        write_report(report, *dir / (report.name + "_report.txt"));
        if (!report.series.empty())
            write_timeseries(report.series, *dir / (report.name + "_timeseries.csv"));
        if (!opts.quiet) err << "wrote results to " << dir->string() << '\n';
    }
    if (!opts.quiet)
        err << report.name << ": " << (report.passed() ? "all checks passed" : "check failed")
            << '\n';
    return report.passed() ? kExitOk : kExitCheckFailed;
}

int run_command(const std::string& command, const Options& opts, std::ostream& out,
                std::ostream& err)
{
    const RunConfig config = load_config(opts);
    if (command == "simulate") {
        const ExperimentReport report = run_simulation(config);
        // Without --out the CSV is the data product on standard output.
        if (opts.out_dir.empty()) {
            write_timeseries(report.series, out);
            return finish(report, opts, out, err, false);
        }
        return finish(report, opts, out, err);
    }
    if (command == "sync") return finish(run_sync_experiment(config), opts, out, err);
    if (command == "threshold") {
        const auto& x = config.experiment;
        return finish(bisect_empirical_threshold(config, x.p_lo, x.p_hi, x.tol).report, opts,
                      out, err);
    }
    if (command == "converge") return finish(convergence_study(config), opts, out, err);
    if (command == "oracle") return finish(oracle_comparison(config), opts, out, err);
    return finish(constants_report(config), opts, out, err);
}

}  // namespace

int cli_main(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Coupled partly diffusive Hindmarsh-Rose simulator and synchronization checks",
                 "hrsync"};
    app.require_subcommand(1);
    Options opts;
    std::uint64_t seed = 0;
    app.add_option("--out", opts.out_dir, "Directory for report and CSV files");
    app.add_flag("--quiet", opts.quiet, "Suppress progress messages");
    auto* seed_opt = app.add_option("--seed", seed, "Override the [initial] seed");

    const std::pair<const char*, const char*> commands[] = {
        {"simulate", "Integrate and write the diagnostics time series"},
        {"sync", "Check the synchronization bound and fit the decay rate"},
        {"threshold", "Bisect the empirical coupling threshold"},
        {"converge", "Measure spatial and temporal convergence orders"},
        {"oracle", "Compare spatially constant runs with the RK4 ODE"},
        {"constants", "Print the derived constants"},
    };
    for (const auto& [name, help] : commands) {
        auto* sub = app.add_subcommand(name, help);
        sub->add_option("config", opts.config_path, "Config file")->required();
        sub->fallthrough();
    }

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitUsage;
    }
    if (seed_opt->count() > 0) opts.seed = seed;

    const std::string command = app.get_subcommands().front()->get_name();
    try {
        return run_command(command, opts, out, err);
    } catch (const ConfigError& e) {
        err << "config error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::exception& e) {
        err << "run failed: " << e.what() << '\n';
        return kExitCheckFailed;
    }
}

}  // namespace hrsync
