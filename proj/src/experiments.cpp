#include "opdyn/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <map>
#include <mutex>
#include <thread>

#include "opdyn/csv.hpp"
#include "opdyn/error.hpp"

namespace opdyn {

namespace {

int percent_of(std::size_t count, std::size_t n) {
    return n == 0 ? 0 : static_cast<int>((count * 100) / n);
}

void validate_message(const SourceMessage& msg, Role audience, const char* welfare_key,
                      const char* security_key) {
    if (msg.audience != audience) throw ConfigError(std::string(welfare_key) + ": wrong audience");
    if (!(msg.value.welfare >= 0.0 && msg.value.welfare <= 1.0)) {
        throw ConfigError(std::string(welfare_key) + " must be in [0, 1]", welfare_key);
    }
    if (!(msg.value.security >= 0.0 && msg.value.security <= 1.0)) {
        throw ConfigError(std::string(security_key) + " must be in [0, 1]", security_key);
    }
}

std::vector<ScenarioConfig> sweep(std::span<const double> tolerances, const ScenarioConfig& base,
                                  std::size_t informed, std::size_t white) {
    if (base.population.n != 100) {
        throw ConfigError("scenario sweeps are defined for 100 agents, got " +
                              std::to_string(base.population.n),
                          "agents");
    }
    std::vector<ScenarioConfig> out;
    for (double t : tolerances) {
        for (std::size_t tv = 0; tv <= informed; tv += 10) {
            ScenarioConfig c = base;
            c.population.tolerance = t;
            c.population.tv_count = tv;
            c.population.wa_count = informed - tv;
            c.population.white_count = white;
            c.validate();
            out.push_back(std::move(c));
        }
    }
    return out;
}

struct Moments {
    double mean = 0.0;
    double std = 0.0;
};

// Sorting first makes the sums independent of seed order.
Moments sample_moments(std::vector<double>& values) {
    std::sort(values.begin(), values.end());
    Moments m;
    for (double v : values) m.mean += v;
    m.mean /= static_cast<double>(values.size());
    if (values.size() > 1) {
        double ss = 0.0;
        for (double v : values) ss += (v - m.mean) * (v - m.mean);
        m.std = std::sqrt(ss / static_cast<double>(values.size() - 1));
    }
    return m;
}

std::optional<int> threshold_over_grid(std::span<const AggregateResult> rows, int informed_pct,
                                       int white_pct) {
    const std::size_t expected = static_cast<std::size_t>(informed_pct / 10 + 1);
    if (rows.size() != expected) {
        throw UsageError("inversion threshold needs " + std::to_string(expected) + " rows, got " +
                         std::to_string(rows.size()));
    }
    std::vector<const AggregateResult*> by_wa(expected, nullptr);
    for (const auto& r : rows) {
        if (r.tolerance != rows.front().tolerance) {
            throw UsageError("inversion threshold rows mix tolerances");
        }
        if (r.white_pct != white_pct || r.tv_pct + r.wa_pct != informed_pct || r.wa_pct % 10 != 0 ||
            r.wa_pct < 0 || r.wa_pct > informed_pct) {
            throw UsageError("row " + r.scenario + " is not on the sweep grid");
        }
        auto& slot = by_wa[static_cast<std::size_t>(r.wa_pct / 10)];
        if (slot) throw UsageError("duplicate row for wa_pct " + std::to_string(r.wa_pct));
        slot = &r;
    }
    for (const auto* r : by_wa) {
        if (r->inverted()) return r->wa_pct;
    }
    return std::nullopt;
}

}  // namespace

void ScenarioConfig::validate() const {
    population.validate();
    NetworkConfig net = network;
    net.n = population.n;
    net.validate();
    controls.validate();
    validate_message(media, Role::TeleViewer, "media_welfare", "media_security");
    validate_message(expert, Role::WiseAgent, "expert_welfare", "expert_security");
    if (seeds.empty()) throw ConfigError("seeds must not be empty", "seeds");
}

int ScenarioConfig::tv_pct() const { return percent_of(population.tv_count, population.n); }
int ScenarioConfig::wa_pct() const { return percent_of(population.wa_count, population.n); }
int ScenarioConfig::white_pct() const { return percent_of(population.white_count, population.n); }

std::string ScenarioConfig::label() const {
    return "tol" + format_real(population.tolerance) + "_tv" + std::to_string(tv_pct()) + "_wa" +
           std::to_string(wa_pct()) + "_wz" + std::to_string(white_pct());
}

SimConfig ScenarioConfig::sim_config() const {
    SimConfig c;
    c.params = population.params();
    c.expert_mode = population.expert_mode;
    c.media = media;
    c.expert = expert;
    c.edge_activation = edge_activation;
    c.update_reads = update_reads;
    return c;
}

SimState build_run_state(const ScenarioConfig& config, std::uint64_t seed) {
    config.validate();
    NetworkConfig net = config.network;
    net.n = config.population.n;
    net.seed = derive_seed(config.fixed_network ? config.seeds.front() : seed, Stream::Network);
    auto graph = std::make_shared<const Graph>(generate_scale_free(net));

    Rng opinion_rng = Rng::substream(seed, Stream::Opinions);
    Rng role_rng = Rng::substream(seed, Stream::Roles);
    const auto opinions = init_opinions(config.population.n, opinion_rng);
    const auto roles = assign_roles(config.population, role_rng);
    return make_state(std::move(graph), roles, opinions, config.sim_config(),
                      Rng::substream(seed, Stream::Shuffle));
}

RunResult run_single(const ScenarioConfig& config, std::uint64_t seed, std::size_t scenario_index) {
    SimState state = build_run_state(config, seed);
    RunResult r;
    r.scenario = config.label();
    r.scenario_index = scenario_index;
    r.seed = seed;
    r.series = run(state, config.controls);
    r.final = r.series.back();
    return r;
}

std::vector<ScenarioConfig> sweep_scenario1(std::span<const double> tolerances,
                                            const ScenarioConfig& base) {
    return sweep(tolerances, base, 100, 0);
}

std::vector<ScenarioConfig> sweep_scenario2(std::span<const double> tolerances,
                                            const ScenarioConfig& base) {
    return sweep(tolerances, base, 70, 30);
}

BatchError::BatchError(const std::string& scenario, std::uint64_t seed, const std::string& cause)
    : std::runtime_error("run " + scenario + " seed " + std::to_string(seed) + " failed: " + cause),
      scenario_(scenario),
      seed_(seed) {}

std::vector<RunResult> run_batch(std::span<const ScenarioConfig> configs, unsigned threads) {
    struct Job {
        std::size_t config;
        std::uint64_t seed;
    };
    std::vector<Job> jobs;
    for (std::size_t i = 0; i < configs.size(); ++i) {
        for (auto seed : configs[i].seeds) jobs.push_back({i, seed});
    }

    std::vector<RunResult> results(jobs.size());
    std::vector<std::string> failures(jobs.size());
    std::atomic<std::size_t> next{0};
    std::atomic<bool> abort{false};

    auto worker = [&] {
        for (;;) {
            const std::size_t k = next.fetch_add(1);
            if (k >= jobs.size() || abort.load()) return;
            try {
                results[k] = run_single(configs[jobs[k].config], jobs[k].seed, jobs[k].config);
            } catch (const std::exception& e) {
                failures[k] = e.what();
                abort.store(true);
            }
        }
    };

    if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
    threads = static_cast<unsigned>(std::min<std::size_t>(threads, std::max<std::size_t>(jobs.size(), 1)));
    if (threads <= 1) {
        worker();
    } else {
        std::vector<std::jthread> pool;
        for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
    }

    for (std::size_t k = 0; k < jobs.size(); ++k) {
        if (!failures[k].empty()) {
            throw BatchError(configs[jobs[k].config].label(), jobs[k].seed, failures[k]);
        }
    }
    return results;
}

AggregateResult aggregate_runs(std::span<const RunResult> runs, const ScenarioConfig& config) {
    if (runs.empty()) throw UsageError("aggregate_runs needs at least one run");
    std::size_t longest = 0;
    for (const auto& r : runs) {
        if (r.series.empty()) throw UsageError("run " + r.scenario + " has an empty series");
        longest = std::max(longest, r.series.size());
    }

    AggregateResult agg;
    agg.scenario = config.label();
    agg.tolerance = config.population.tolerance;
    agg.tv_pct = config.tv_pct();
    agg.wa_pct = config.wa_pct();
    agg.white_pct = config.white_pct();
    agg.runs = runs.size();
    agg.series.reserve(longest);

    std::vector<double> welfare(runs.size());
    std::vector<double> security(runs.size());
    for (std::size_t k = 0; k < longest; ++k) {
        for (std::size_t i = 0; i < runs.size(); ++i) {
            const auto& s = runs[i].series;
            const TickMetrics& row = s[std::min(k, s.size() - 1)];
            welfare[i] = row.mean_welfare;
            security[i] = row.mean_security;
        }
        const Moments w = sample_moments(welfare);
        const Moments s = sample_moments(security);
        agg.series.push_back({k, w.mean, w.std, s.mean, s.std});
    }
    agg.final = agg.series.back();
    return agg;
}

std::vector<AggregateResult> aggregate_batch(std::span<const RunResult> results,
                                             std::span<const ScenarioConfig> configs) {
    std::vector<std::vector<RunResult>> grouped(configs.size());
    for (const auto& r : results) {
        if (r.scenario_index >= configs.size()) throw UsageError("run result references unknown scenario");
        grouped[r.scenario_index].push_back(r);
    }
    std::vector<AggregateResult> out;
    out.reserve(configs.size());
    for (std::size_t i = 0; i < configs.size(); ++i) {
        if (grouped[i].size() != configs[i].seeds.size()) {
            throw UsageError("scenario " + configs[i].label() + " has " + std::to_string(grouped[i].size()) +
                             " runs, expected " + std::to_string(configs[i].seeds.size()));
        }
        out.push_back(aggregate_runs(grouped[i], configs[i]));
    }
    return out;
}

std::optional<int> find_inversion_threshold(std::span<const AggregateResult> rows) {
    return threshold_over_grid(rows, 100, 0);
}

std::optional<int> find_inversion_threshold_white_zone(std::span<const AggregateResult> rows) {
    return threshold_over_grid(rows, 70, 30);
}

std::vector<ThresholdRow> thresholds_by_tolerance(std::span<const AggregateResult> rows, bool white_zone) {
    std::vector<double> order;
    std::map<double, std::vector<AggregateResult>> groups;
    for (const auto& r : rows) {
        if (!groups.contains(r.tolerance)) order.push_back(r.tolerance);
        groups[r.tolerance].push_back(r);
    }
    std::vector<ThresholdRow> out;
    for (double t : order) {
        const auto& g = groups[t];
        out.push_back({t, white_zone ? find_inversion_threshold_white_zone(g) : find_inversion_threshold(g)});
    }
    return out;
}

}  // namespace opdyn
