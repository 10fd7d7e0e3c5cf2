#pragma once

#include <compare>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace specmult {

using Vertex = std::size_t;

/// Unordered edge stored with u < v.
struct Edge {
    Vertex u = 0;
    Vertex v = 0;

    auto operator<=>(const Edge&) const = default;
};

/// Normalizes the endpoint order; rejects loops.
Edge make_edge(Vertex a, Vertex b);

/// Sorted, duplicate-free set of vertex ids.
class VertexSet {
public:
    VertexSet() = default;
    VertexSet(std::initializer_list<Vertex> ids);
    explicit VertexSet(std::vector<Vertex> ids);

    static VertexSet range(std::size_t n);

    std::size_t size() const noexcept { return ids_.size(); }
    bool empty() const noexcept { return ids_.empty(); }
    bool contains(Vertex v) const;
    Vertex operator[](std::size_t i) const { return ids_[i]; }

    auto begin() const noexcept { return ids_.begin(); }
    auto end() const noexcept { return ids_.end(); }
    const std::vector<Vertex>& ids() const noexcept { return ids_; }

    /// Vertices of {0..n-1} not in this set.
    VertexSet complement(std::size_t n) const;
    VertexSet unite(const VertexSet& other) const;
    VertexSet minus(const VertexSet& other) const;

    bool operator==(const VertexSet&) const = default;

private:
    std::vector<Vertex> ids_;
};

/// Simple undirected graph on vertices 0..n-1. Immutable after construction.
class Graph {
public:
    Graph() = default;
    explicit Graph(std::size_t order);
    /// Throws Error(LoopEdge | DuplicateEdge | IndexOutOfRange).
    Graph(std::size_t order, std::span<const Edge> edges);
    Graph(std::size_t order, std::initializer_list<std::pair<Vertex, Vertex>> edges);

    std::size_t order() const noexcept { return adjacency_.size(); }
    std::size_t size() const noexcept { return edges_.size(); }

    std::span<const Vertex> neighbors(Vertex v) const;
    std::size_t degree(Vertex v) const { return neighbors(v).size(); }
    bool has_edge(Vertex a, Vertex b) const;
    std::span<const Edge> edges() const noexcept { return edges_; }

    friend bool operator==(const Graph& a, const Graph& b) {
        return a.order() == b.order() && a.edges_ == b.edges_;
    }

private:
    std::vector<Edge> edges_;
    std::vector<std::vector<Vertex>> adjacency_;
};

/// Induced subgraph together with the child -> parent vertex map.
struct SubgraphMap {
    Graph child;
    std::vector<Vertex> to_parent;

    VertexSet parent_vertices() const { return VertexSet(to_parent); }
};

/// Parses the edge-list text format: header "n m", then m lines "u v",
/// '#' lines are comments. Throws ParseError or Error on invalid graphs.
Graph parse_graph(std::string_view text);
std::string serialize_graph(const Graph& g);

std::size_t cyclomatic_number(const Graph& g);
VertexSet pendant_vertices(const Graph& g);
std::vector<VertexSet> components(const Graph& g);
bool is_connected(const Graph& g);
bool is_forest(const Graph& g);
bool is_tree(const Graph& g);
bool is_path_graph(const Graph& g);
bool is_cycle_graph(const Graph& g);

SubgraphMap induced_subgraph(const Graph& g, const VertexSet& keep);
SubgraphMap delete_vertices(const Graph& g, const VertexSet& removed);
Graph delete_edge(const Graph& g, Edge e);
Graph add_edge(const Graph& g, Edge e);

/// BFS distances; unreachable vertices get SIZE_MAX.
std::vector<std::size_t> distances_from(const Graph& g, Vertex source);

/// Vertex v of g becomes perm[v].
Graph relabel(const Graph& g, std::span<const Vertex> perm);

/// Vertices of a path graph listed from one end to the other.
std::vector<Vertex> path_order(const Graph& g);

/// Vertices of a cycle graph listed along the cycle starting at vertex 0.
std::vector<Vertex> cycle_order(const Graph& g);

} // namespace specmult
