#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace opdyn {

using NodeId = std::uint32_t;
using Edge = std::pair<NodeId, NodeId>;

/// Undirected simple graph over dense node ids [0, n).
///
/// Edges are stored normalized (u < v) and sorted; adjacency lists are
/// sorted ascending. Immutable once built.
class Graph {
public:
    Graph() = default;

    /// Builds from an explicit edge list. Throws ConfigError on self-loops,
    /// duplicate edges or endpoints outside [0, n).
    static Graph from_edges(std::size_t n, std::vector<Edge> edges);

    std::size_t node_count() const noexcept { return adjacency_.size(); }
    std::size_t edge_count() const noexcept { return edges_.size(); }
    std::span<const Edge> edges() const noexcept { return edges_; }

    /// Sorted neighbor list. Throws UsageError if v is out of range.
    std::span<const NodeId> neighbors(NodeId v) const;
    std::size_t degree(NodeId v) const { return neighbors(v).size(); }

    bool is_connected() const;

    bool operator==(const Graph&) const = default;

private:
    std::vector<Edge> edges_;
    std::vector<std::vector<NodeId>> adjacency_;
};

struct NetworkConfig {
    std::size_t n = 100;
    std::size_t seed_core_size = 3;
    std::size_t attach_count = 2;
    std::uint64_t seed = 0;

    /// Throws ConfigError when attachment is impossible.
    void validate() const;

    bool operator==(const NetworkConfig&) const = default;
};

/// Preferential-attachment growth from a fully connected core.
///
/// Each new node links to attach_count distinct existing nodes; every draw
/// picks an existing node with probability proportional to its degree
/// before the new node arrived, duplicates are redrawn.
Graph generate_scale_free(const NetworkConfig& config);

struct DegreeStats {
    std::map<std::size_t, std::size_t> histogram;  // degree -> node count
    std::size_t max_degree = 0;
    /// Least-squares slope of log(count) against log(degree) over the
    /// observed degrees >= 1. Empty when fewer than two distinct degrees.
    std::optional<double> log_log_slope;
};

DegreeStats degree_stats(const Graph& g);

/// `u v` per line, ascending by (u, v), LF endings.
std::string render_edge_list(const Graph& g);

}  // namespace opdyn
