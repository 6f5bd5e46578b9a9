#include "opdyn/simulation.hpp"

#include <cmath>
#include <string>

#include "opdyn/error.hpp"

namespace opdyn {

std::string_view to_string(EdgeActivation mode) {
    return mode == EdgeActivation::PerDirection ? "per_direction" : "once";
}

std::string_view to_string(UpdateReads mode) {
    return mode == UpdateReads::Snapshot ? "snapshot" : "live";
}

void SimState::validate() const {
    if (!graph) throw UsageError("simulation state has no graph");
    if (agents.size() != graph->node_count()) {
        throw UsageError("agent count " + std::to_string(agents.size()) + " does not match graph size " +
                         std::to_string(graph->node_count()));
    }
    for (std::size_t i = 0; i < agents.size(); ++i) {
        if (agents[i].id != i) throw UsageError("agent ids must be dense and ordered");
        if (!in_unit_range(agents[i].opinions)) {
            throw UsageError("agent " + std::to_string(i) + " has opinions outside [0, 1]");
        }
    }
}

void RunControls::validate() const {
    if (max_ticks < 1) throw ConfigError("max_ticks must be at least 1", "max_ticks");
    if (!(convergence_eps >= 0.0)) throw ConfigError("eps must be non-negative", "eps");
    if (patience < 1) throw ConfigError("patience must be at least 1", "patience");
}

SimState make_state(std::shared_ptr<const Graph> graph, std::span<const Role> roles,
                    std::span<const OpinionPair> opinions, const SimConfig& config, Rng shuffle_rng) {
    if (!graph) throw UsageError("simulation state has no graph");
    if (roles.size() != graph->node_count() || opinions.size() != graph->node_count()) {
        throw UsageError("roles and opinions must cover every graph node");
    }
    config.params.validate();

    SimState state;
    state.graph = std::move(graph);
    state.config = config;
    state.rng = shuffle_rng;
    state.agents.reserve(roles.size());
    for (std::size_t i = 0; i < roles.size(); ++i) {
        state.agents.push_back({static_cast<NodeId>(i), roles[i], opinions[i]});
    }
    state.validate();
    return state;
}

void peer_exchange_phase(SimState& state, const ActivationObserver& observer) {
    const auto edges = state.graph->edges();
    std::vector<Edge> order(edges.begin(), edges.end());
    if (state.config.edge_activation == EdgeActivation::PerDirection) {
        for (const auto& [u, v] : edges) order.emplace_back(v, u);
    }
    state.rng.shuffle(std::span<Edge>(order));

    const UpdateParams& params = state.config.params;
    const bool snapshot = state.config.update_reads == UpdateReads::Snapshot;
    std::vector<OpinionPair> frozen;
    if (snapshot) {
        frozen.reserve(state.agents.size());
        for (const auto& a : state.agents) frozen.push_back(a.opinions);
    }

    for (const auto& [u, v] : order) {
        auto& pu = state.agents[u].opinions;
        auto& pv = state.agents[v].opinions;
        const OpinionPair u_before = pu;
        const OpinionPair v_before = pv;
        const OpinionPair& seen_by_u = snapshot ? frozen[v] : v_before;
        const OpinionPair& seen_by_v = snapshot ? frozen[u] : u_before;
        pu = bc_update_pair(u_before, seen_by_u, params);
        pv = bc_update_pair(v_before, seen_by_v, params);
        if (observer) observer(u, v, u_before, v_before, pu, pv);
    }
}

TickMetrics compute_metrics(const SimState& state) {
    TickMetrics m;
    m.tick = state.tick;
    const auto n = static_cast<double>(state.agents.size());
    if (state.agents.empty()) return m;
    for (const auto& a : state.agents) {
        m.mean_welfare += a.opinions.welfare;
        m.mean_security += a.opinions.security;
    }
    m.mean_welfare /= n;
    m.mean_security /= n;
    double vw = 0, vs = 0;
    for (const auto& a : state.agents) {
        vw += (a.opinions.welfare - m.mean_welfare) * (a.opinions.welfare - m.mean_welfare);
        vs += (a.opinions.security - m.mean_security) * (a.opinions.security - m.mean_security);
    }
    m.std_welfare = std::sqrt(vw / n);
    m.std_security = std::sqrt(vs / n);
    return m;
}

TickMetrics tick(SimState& state, const ActivationObserver& observer) {
    const SimConfig& c = state.config;
    media_step(state.agents, c.media, c.params);
    expert_step(state.agents, c.expert, c.params.convergence, c.expert_mode);
    peer_exchange_phase(state, observer);
    ++state.tick;
    return compute_metrics(state);
}

std::vector<TickMetrics> run(SimState& state, const RunControls& controls) {
    controls.validate();
    std::vector<TickMetrics> series;
    series.reserve(controls.max_ticks + 1);
    series.push_back(compute_metrics(state));

    std::size_t calm = 0;
    for (std::size_t i = 0; i < controls.max_ticks; ++i) {
        const TickMetrics& prev = series.back();
        TickMetrics next = tick(state);
        const bool still = std::abs(next.mean_welfare - prev.mean_welfare) < controls.convergence_eps &&
                           std::abs(next.mean_security - prev.mean_security) < controls.convergence_eps;
        series.push_back(next);
        calm = still ? calm + 1 : 0;
        if (calm >= controls.patience) break;
    }
    return series;
}

}  // namespace opdyn
