// opdyn: command-line driver for single scenarios, the two sweep batteries
// and network diagnostics.
//
// Exit codes: 0 success, 1 validation error, 2 runtime or IO error.

#include <CLI11.hpp>

#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "opdyn/csv.hpp"
#include "opdyn/error.hpp"
#include "opdyn/experiments.hpp"
#include "opdyn/network.hpp"
#include "opdyn/scenario_io.hpp"

namespace {

using namespace opdyn;

struct ScenarioFlags {
    std::string config_path;
    std::map<std::string, std::string> overrides;

    void attach(CLI::App& cmd) {
        cmd.add_option("-c,--config", config_path, "Scenario file (key = value per line)");
        for (auto key : scenario_keys()) {
            const std::string name(key);
            cmd.add_option("--" + name, overrides[name], "Override scenario key '" + name + "'");
        }
    }

    // Later lines win, so defaults < file < flags.
    ScenarioConfig resolve(const std::string& defaults) const {
        std::string text = defaults;
        if (!config_path.empty()) {
            text += read_text_file(config_path);
            text += '\n';
        }
        for (const auto& [key, value] : overrides) {
            if (!value.empty()) text += key + " = " + value + "\n";
        }
        return parse_scenario_file(text);
    }
};

struct OutputFlags {
    std::string output = "-";
    std::string summary_output;
    std::string format = "timeseries";
    unsigned threads = 0;

    void attach(CLI::App& cmd, const std::string& default_format) {
        format = default_format;
        cmd.add_option("-o,--output", output, "Output path, '-' for stdout")->capture_default_str();
        cmd.add_option("--summary-output", summary_output,
                       "Summary path when --format both (default: <output>.summary.csv)");
        cmd.add_option("--format", format, "timeseries | summary | both")
            ->check(CLI::IsMember({"timeseries", "summary", "both"}))
            ->capture_default_str();
        cmd.add_option("--threads", threads, "Worker threads, 0 = hardware concurrency")->capture_default_str();
    }
};

void emit(const std::string& path, const std::string& text) {
    if (path == "-") {
        std::cout << text;
        std::cout.flush();
    } else {
        write_text_file(path, text);
    }
}

void emit_results(const OutputFlags& out, std::span<const ScenarioConfig> configs,
                  std::span<const RunResult> results, bool white_zone, bool with_thresholds) {
    const bool ts = out.format != "summary";
    const bool summary = out.format != "timeseries";
    if (ts) emit(out.output, write_timeseries_csv(results));
    if (summary) {
        const auto aggregates = aggregate_batch(results, configs);
        std::vector<ThresholdRow> thresholds;
        if (with_thresholds) thresholds = thresholds_by_tolerance(aggregates, white_zone);
        std::string path = out.output;
        if (ts) {
            path = !out.summary_output.empty() ? out.summary_output
                   : out.output == "-"         ? "-"
                                               : out.output + ".summary.csv";
            if (path == "-" && out.output == "-") std::cout << '\n';
        }
        emit(path, write_summary_csv(aggregates, thresholds));
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Two-dimensional bounded-confidence opinion dynamics with media and expert sources"};
    app.require_subcommand(1);

    ScenarioFlags run_flags, sweep1_flags, sweep2_flags, net_flags;
    OutputFlags run_out, sweep1_out, sweep2_out;
    std::vector<double> tolerances1 = {0.2, 0.5, 0.8};
    std::vector<double> tolerances2 = {0.2, 0.5, 0.8};

    auto* run_cmd = app.add_subcommand("run", "Run one scenario over its seeds");
    run_flags.attach(*run_cmd);
    run_out.attach(*run_cmd, "timeseries");

    auto* sweep1_cmd = app.add_subcommand("sweep1", "Media vs experts battery (11 rows per tolerance)");
    sweep1_flags.attach(*sweep1_cmd);
    sweep1_out.attach(*sweep1_cmd, "summary");
    sweep1_cmd->add_option("--tolerances", tolerances1, "Tolerance values to sweep")
        ->delimiter(',')
        ->capture_default_str();

    auto* sweep2_cmd = app.add_subcommand("sweep2", "30% white-zone battery (8 rows per tolerance)");
    sweep2_flags.attach(*sweep2_cmd);
    sweep2_out.attach(*sweep2_cmd, "summary");
    sweep2_cmd->add_option("--tolerances", tolerances2, "Tolerance values to sweep")
        ->delimiter(',')
        ->capture_default_str();

    std::optional<std::uint64_t> net_seed;
    std::string edges_path;
    std::string net_output = "-";
    auto* net_cmd = app.add_subcommand("net-stats", "Degree histogram and log-log slope of a generated network");
    net_flags.attach(*net_cmd);
    net_cmd->add_option("--seed", net_seed, "Run seed whose network sub-stream is used (default: first seed)");
    net_cmd->add_option("--edges", edges_path, "Also write the edge list to this path");
    net_cmd->add_option("-o,--output", net_output, "Stats output path, '-' for stdout")->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        if (*run_cmd) {
            const ScenarioConfig config = run_flags.resolve("");
            const std::vector<ScenarioConfig> configs{config};
            const auto results = run_batch(configs, run_out.threads);
            emit_results(run_out, configs, results, false, false);
        } else if (*sweep1_cmd) {
            const ScenarioConfig base = sweep1_flags.resolve("agents = 100\nwhite_pct = 100\n");
            const auto configs = sweep_scenario1(tolerances1, base);
            const auto results = run_batch(configs, sweep1_out.threads);
            emit_results(sweep1_out, configs, results, false, true);
        } else if (*sweep2_cmd) {
            const ScenarioConfig base = sweep2_flags.resolve("agents = 100\nwhite_pct = 100\n");
            const auto configs = sweep_scenario2(tolerances2, base);
            const auto results = run_batch(configs, sweep2_out.threads);
            emit_results(sweep2_out, configs, results, true, true);
        } else if (*net_cmd) {
            const ScenarioConfig config = net_flags.resolve("agents = 100\nwhite_pct = 100\n");
            NetworkConfig net = config.network;
            net.n = config.population.n;
            net.seed = derive_seed(net_seed.value_or(config.seeds.front()), Stream::Network);
            const Graph g = generate_scale_free(net);
            const DegreeStats stats = degree_stats(g);

            std::string text = "nodes," + std::to_string(g.node_count()) + "\nedges," +
                               std::to_string(g.edge_count()) + "\nmax_degree," +
                               std::to_string(stats.max_degree) + "\nlog_log_slope," +
                               (stats.log_log_slope ? format_real(*stats.log_log_slope) : "none") +
                               "\n\ndegree,count\n";
            for (const auto& [k, count] : stats.histogram) {
                text += std::to_string(k) + ',' + std::to_string(count) + '\n';
            }
            emit(net_output, text);
            if (!edges_path.empty()) emit(edges_path, render_edge_list(g));
        }
    } catch (const ConfigError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
    return 0;
}
