#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "opdyn/agents.hpp"
#include "opdyn/network.hpp"
#include "opdyn/simulation.hpp"

namespace opdyn {

/// One experiment row plus the seeds it is replicated over.
struct ScenarioConfig {
    PopulationConfig population;
    NetworkConfig network;  // n mirrors population.n; seed is derived per run
    SourceMessage media = kDefaultMedia;
    SourceMessage expert = kDefaultExpert;
    RunControls controls;
    EdgeActivation edge_activation = EdgeActivation::Once;
    UpdateReads update_reads = UpdateReads::Live;
    /// Reuse the graph of seeds.front() for every seed instead of one graph per seed.
    bool fixed_network = false;
    std::vector<std::uint64_t> seeds = {0, 1, 2, 3, 4, 5, 6, 7, 8, 9};

    void validate() const;

    int tv_pct() const;
    int wa_pct() const;
    int white_pct() const;

    /// Stable, CSV-safe identifier, e.g. `tol0.2_tv70_wa30_wz0`.
    std::string label() const;

    SimConfig sim_config() const;

    bool operator==(const ScenarioConfig&) const = default;
};

/// Builds the initial state of one run. Sub-streams of `seed`: 1 network,
/// 2 opinions, 3 roles, 4 activation order.
SimState build_run_state(const ScenarioConfig& config, std::uint64_t seed);

struct RunResult {
    std::string scenario;
    std::size_t scenario_index = 0;
    std::uint64_t seed = 0;
    std::vector<TickMetrics> series;
    TickMetrics final;

    bool operator==(const RunResult&) const = default;
};

RunResult run_single(const ScenarioConfig& config, std::uint64_t seed, std::size_t scenario_index = 0);

/// Media-vs-experts grid: TV share 0..100 step 10, WA the rest, no white zone.
std::vector<ScenarioConfig> sweep_scenario1(std::span<const double> tolerances,
                                            const ScenarioConfig& base);

/// White-zone grid: 30% white zone, TV share 0..70 step 10, WA the rest.
std::vector<ScenarioConfig> sweep_scenario2(std::span<const double> tolerances,
                                            const ScenarioConfig& base);

class BatchError : public std::runtime_error {
public:
    BatchError(const std::string& scenario, std::uint64_t seed, const std::string& cause);
    const std::string& scenario() const noexcept { return scenario_; }
    std::uint64_t seed() const noexcept { return seed_; }

private:
    std::string scenario_;
    std::uint64_t seed_;
};

/// Every (config, seed) pair, ordered by (config index, seed index).
/// `threads` == 0 uses the hardware concurrency.
std::vector<RunResult> run_batch(std::span<const ScenarioConfig> configs, unsigned threads = 0);

struct AggregatePoint {
    std::uint64_t tick = 0;
    double mean_welfare = 0.0;  // across-seed mean of population means
    double std_welfare = 0.0;   // across-seed sample deviation
    double mean_security = 0.0;
    double std_security = 0.0;

    bool operator==(const AggregatePoint&) const = default;
};

struct AggregateResult {
    std::string scenario;
    double tolerance = 0.0;
    int tv_pct = 0;
    int wa_pct = 0;
    int white_pct = 0;
    std::size_t runs = 0;
    std::vector<AggregatePoint> series;
    AggregatePoint final;

    bool inverted() const { return final.mean_welfare > final.mean_security; }

    bool operator==(const AggregateResult&) const = default;
};

/// Aggregates the runs of one scenario. Shorter series are padded with their
/// last row. Result is bit-identical under any permutation of `runs`.
AggregateResult aggregate_runs(std::span<const RunResult> runs, const ScenarioConfig& config);

/// run_batch output grouped by scenario, aggregated in config order.
std::vector<AggregateResult> aggregate_batch(std::span<const RunResult> results,
                                             std::span<const ScenarioConfig> configs);

/// Smallest WA share whose final aggregate has mean welfare above mean
/// security, over the eleven media-vs-experts rows of a single tolerance.
std::optional<int> find_inversion_threshold(std::span<const AggregateResult> rows);

/// Same rule over the eight white-zone rows of a single tolerance.
std::optional<int> find_inversion_threshold_white_zone(std::span<const AggregateResult> rows);

struct ThresholdRow {
    double tolerance = 0.0;
    std::optional<int> wa_pct;
};

/// Groups aggregates by tolerance (first-seen order) and applies the matching
/// threshold rule. `white_zone` selects the white-zone grid.
std::vector<ThresholdRow> thresholds_by_tolerance(std::span<const AggregateResult> rows, bool white_zone);

}  // namespace opdyn
