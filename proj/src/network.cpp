#include "opdyn/network.hpp"

#include <algorithm>
#include <cmath>
#include <queue>

#include "opdyn/error.hpp"
#include "opdyn/rng.hpp"

namespace opdyn {

Graph Graph::from_edges(std::size_t n, std::vector<Edge> edges) {
    for (auto& [u, v] : edges) {
        if (u == v) throw ConfigError("self-loop on node " + std::to_string(u));
        if (u >= n || v >= n) {
            throw ConfigError("edge (" + std::to_string(u) + ", " + std::to_string(v) +
                              ") outside node range " + std::to_string(n));
        }
        if (u > v) std::swap(u, v);
    }
    std::sort(edges.begin(), edges.end());
    if (auto dup = std::adjacent_find(edges.begin(), edges.end()); dup != edges.end()) {
        throw ConfigError("duplicate edge (" + std::to_string(dup->first) + ", " +
                          std::to_string(dup->second) + ")");
    }

    Graph g;
    g.adjacency_.resize(n);
    for (const auto& [u, v] : edges) {
        g.adjacency_[u].push_back(v);
        g.adjacency_[v].push_back(u);
    }
    for (auto& adj : g.adjacency_) std::sort(adj.begin(), adj.end());
    g.edges_ = std::move(edges);
    return g;
}

std::span<const NodeId> Graph::neighbors(NodeId v) const {
    if (v >= adjacency_.size()) {
        throw UsageError("node " + std::to_string(v) + " out of range for graph of " +
                         std::to_string(adjacency_.size()) + " nodes");
    }
    return adjacency_[v];
}

bool Graph::is_connected() const {
    if (adjacency_.empty()) return true;
    std::vector<bool> seen(adjacency_.size(), false);
    std::queue<NodeId> frontier;
    frontier.push(0);
    seen[0] = true;
    std::size_t reached = 1;
    while (!frontier.empty()) {
        const NodeId v = frontier.front();
        frontier.pop();
        for (NodeId w : adjacency_[v]) {
            if (!seen[w]) {
                seen[w] = true;
                ++reached;
                frontier.push(w);
            }
        }
    }
    return reached == adjacency_.size();
}

void NetworkConfig::validate() const {
    if (seed_core_size < 2) {
        throw ConfigError("net_core must be at least 2, got " + std::to_string(seed_core_size),
                          "net_core");
    }
    if (attach_count < 1 || attach_count > seed_core_size) {
        throw ConfigError("net_attach must be in [1, net_core=" + std::to_string(seed_core_size) +
                              "], got " + std::to_string(attach_count),
                          "net_attach");
    }
    if (n < seed_core_size) {
        throw ConfigError("node count " + std::to_string(n) + " is smaller than net_core " +
                              std::to_string(seed_core_size),
                          "agents");
    }
}

Graph generate_scale_free(const NetworkConfig& config) {
    config.validate();
    Rng rng(config.seed);

    std::vector<Edge> edges;
    edges.reserve(config.seed_core_size * (config.seed_core_size - 1) / 2 +
                  (config.n - config.seed_core_size) * config.attach_count);

    // One entry per edge endpoint: a uniform pick from it is a
    // degree-proportional pick over nodes.
    std::vector<NodeId> endpoints;
    endpoints.reserve(2 * edges.capacity());

    const auto core = static_cast<NodeId>(config.seed_core_size);
    for (NodeId u = 0; u < core; ++u) {
        for (NodeId v = u + 1; v < core; ++v) {
            edges.emplace_back(u, v);
            endpoints.push_back(u);
            endpoints.push_back(v);
        }
    }

    std::vector<NodeId> targets;
    for (auto v = core; v < config.n; ++v) {
        targets.clear();
        const std::size_t pool = endpoints.size();
        while (targets.size() < config.attach_count) {
            const NodeId pick = endpoints[rng.below(pool)];
            if (std::find(targets.begin(), targets.end(), pick) == targets.end()) {
                targets.push_back(pick);
            }
        }
        for (NodeId u : targets) {
            edges.emplace_back(u, v);
            endpoints.push_back(u);
            endpoints.push_back(v);
        }
    }
    return Graph::from_edges(config.n, std::move(edges));
}

DegreeStats degree_stats(const Graph& g) {
    DegreeStats stats;
    for (NodeId v = 0; v < g.node_count(); ++v) {
        const auto k = g.degree(v);
        ++stats.histogram[k];
        stats.max_degree = std::max(stats.max_degree, k);
    }

    std::vector<std::pair<double, double>> points;
    for (const auto& [k, count] : stats.histogram) {
        if (k == 0) continue;
        points.emplace_back(std::log(static_cast<double>(k)), std::log(static_cast<double>(count)));
    }
    if (points.size() < 2) return stats;

    double mx = 0, my = 0;
    for (const auto& [x, y] : points) {
        mx += x;
        my += y;
    }
    mx /= static_cast<double>(points.size());
    my /= static_cast<double>(points.size());
    double sxy = 0, sxx = 0;
    for (const auto& [x, y] : points) {
        sxy += (x - mx) * (y - my);
        sxx += (x - mx) * (x - mx);
    }
    stats.log_log_slope = sxy / sxx;
    return stats;
}

std::string render_edge_list(const Graph& g) {
    std::string out;
    for (const auto& [u, v] : g.edges()) {
        out += std::to_string(u);
        out += ' ';
        out += std::to_string(v);
        out += '\n';
    }
    return out;
}

}  // namespace opdyn
