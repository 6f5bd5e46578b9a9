#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <memory>
#include <string_view>
#include <vector>

#include "opdyn/agents.hpp"
#include "opdyn/network.hpp"
#include "opdyn/opinion.hpp"
#include "opdyn/rng.hpp"

namespace opdyn {

/// How often an undirected edge fires during one peer-exchange phase.
enum class EdgeActivation {
    Once,          // each undirected edge once
    PerDirection,  // once per directed adjacency, i.e. twice
};

/// Where an activation reads the partner's opinion from.
enum class UpdateReads {
    Live,      // current value, already updated earlier in the tick
    Snapshot,  // value at the start of the peer phase; own value stays live
};

std::string_view to_string(EdgeActivation mode);
std::string_view to_string(UpdateReads mode);

struct SimConfig {
    UpdateParams params;
    ExpertMode expert_mode = ExpertMode::Converge;
    SourceMessage media = kDefaultMedia;
    SourceMessage expert = kDefaultExpert;
    EdgeActivation edge_activation = EdgeActivation::Once;
    UpdateReads update_reads = UpdateReads::Live;
};

struct SimState {
    std::shared_ptr<const Graph> graph;
    std::vector<AgentState> agents;
    SimConfig config;
    std::uint64_t tick = 0;
    Rng rng{0};  // peer activation order

    /// Checks agents.size() == graph->node_count() and opinion ranges.
    void validate() const;
};

/// Population statistics after a tick; std is the population (1/n) deviation.
struct TickMetrics {
    std::uint64_t tick = 0;
    double mean_welfare = 0.0;
    double mean_security = 0.0;
    double std_welfare = 0.0;
    double std_security = 0.0;

    bool operator==(const TickMetrics&) const = default;
};

struct RunControls {
    std::size_t max_ticks = 100;
    double convergence_eps = 1e-4;
    std::size_t patience = 10;

    void validate() const;

    bool operator==(const RunControls&) const = default;
};

/// Called once per edge activation with both endpoints before and after.
using ActivationObserver = std::function<void(NodeId u, NodeId v, const OpinionPair& u_before,
                                              const OpinionPair& v_before, const OpinionPair& u_after,
                                              const OpinionPair& v_after)>;

SimState make_state(std::shared_ptr<const Graph> graph, std::span<const Role> roles,
                    std::span<const OpinionPair> opinions, const SimConfig& config, Rng shuffle_rng);

/// Fires every edge (per EdgeActivation) in a freshly shuffled order; each
/// activation moves both endpoints toward each other under the guard.
void peer_exchange_phase(SimState& state, const ActivationObserver& observer = {});

TickMetrics compute_metrics(const SimState& state);

/// Media phase, then expert phase, then peer exchange; returns metrics of the
/// state after all three.
TickMetrics tick(SimState& state, const ActivationObserver& observer = {});

/// Tick-0 snapshot plus one row per tick. Stops early once both means have
/// moved less than convergence_eps for `patience` consecutive ticks.
std::vector<TickMetrics> run(SimState& state, const RunControls& controls);

}  // namespace opdyn
