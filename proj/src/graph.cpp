#include "specmult/graph.hpp"

#include "specmult/errors.hpp"

#include <algorithm>
#include <charconv>
#include <limits>
#include <numeric>
#include <queue>
#include <sstream>

namespace specmult {

Edge make_edge(Vertex a, Vertex b) {
    if (a == b) {
        throw Error(ErrorKind::LoopEdge, "loop at vertex " + std::to_string(a));
    }
    return a < b ? Edge{a, b} : Edge{b, a};
}

// ---------------------------------------------------------------- VertexSet

VertexSet::VertexSet(std::initializer_list<Vertex> ids) : VertexSet(std::vector<Vertex>(ids)) {}

VertexSet::VertexSet(std::vector<Vertex> ids) : ids_(std::move(ids)) {
    std::sort(ids_.begin(), ids_.end());
    ids_.erase(std::unique(ids_.begin(), ids_.end()), ids_.end());
}

VertexSet VertexSet::range(std::size_t n) {
    std::vector<Vertex> ids(n);
    std::iota(ids.begin(), ids.end(), Vertex{0});
    return VertexSet(std::move(ids));
}

bool VertexSet::contains(Vertex v) const {
    return std::binary_search(ids_.begin(), ids_.end(), v);
}

VertexSet VertexSet::complement(std::size_t n) const {
    std::vector<Vertex> out;
    out.reserve(n);
    std::size_t k = 0;
    for (Vertex v = 0; v < n; ++v) {
        while (k < ids_.size() && ids_[k] < v) ++k;
        if (k < ids_.size() && ids_[k] == v) continue;
        out.push_back(v);
    }
    return VertexSet(std::move(out));
}

VertexSet VertexSet::unite(const VertexSet& other) const {
    std::vector<Vertex> out;
    std::set_union(ids_.begin(), ids_.end(), other.ids_.begin(), other.ids_.end(),
                   std::back_inserter(out));
    return VertexSet(std::move(out));
}

VertexSet VertexSet::minus(const VertexSet& other) const {
    std::vector<Vertex> out;
    std::set_difference(ids_.begin(), ids_.end(), other.ids_.begin(), other.ids_.end(),
                        std::back_inserter(out));
    return VertexSet(std::move(out));
}

// -------------------------------------------------------------------- Graph

Graph::Graph(std::size_t order) : adjacency_(order) {}

Graph::Graph(std::size_t order, std::span<const Edge> edges) : adjacency_(order) {
    edges_.reserve(edges.size());
    for (const Edge& raw : edges) {
        const Edge e = make_edge(raw.u, raw.v);
        if (e.v >= order) {
            throw Error(ErrorKind::IndexOutOfRange,
                        "edge (" + std::to_string(raw.u) + "," + std::to_string(raw.v) +
                            ") out of range for n=" + std::to_string(order));
        }
        edges_.push_back(e);
    }
    std::sort(edges_.begin(), edges_.end());
    const auto dup = std::adjacent_find(edges_.begin(), edges_.end());
    if (dup != edges_.end()) {
        throw Error(ErrorKind::DuplicateEdge,
                    "duplicate edge (" + std::to_string(dup->u) + "," + std::to_string(dup->v) + ")");
    }
    for (const Edge& e : edges_) {
        adjacency_[e.u].push_back(e.v);
        adjacency_[e.v].push_back(e.u);
    }
    for (auto& list : adjacency_) std::sort(list.begin(), list.end());
}

namespace {
std::vector<Edge> to_edges(std::initializer_list<std::pair<Vertex, Vertex>> pairs) {
    std::vector<Edge> out;
    out.reserve(pairs.size());
    for (auto [a, b] : pairs) out.push_back(Edge{a, b});
    return out;
}
} // namespace

Graph::Graph(std::size_t order, std::initializer_list<std::pair<Vertex, Vertex>> edges)
    : Graph(order, to_edges(edges)) {}

std::span<const Vertex> Graph::neighbors(Vertex v) const {
    if (v >= adjacency_.size()) {
        throw Error(ErrorKind::IndexOutOfRange, "vertex " + std::to_string(v) + " out of range");
    }
    return adjacency_[v];
}

bool Graph::has_edge(Vertex a, Vertex b) const {
    if (a >= order() || b >= order()) return false;
    const auto& list = adjacency_[a];
    return std::binary_search(list.begin(), list.end(), b);
}

// ------------------------------------------------------------------ parsing

namespace {

std::string_view trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

std::vector<std::size_t> parse_numbers(std::string_view line, std::size_t line_no) {
    std::vector<std::size_t> out;
    std::size_t pos = 0;
    while (pos < line.size()) {
        while (pos < line.size() && (line[pos] == ' ' || line[pos] == '\t')) ++pos;
        if (pos >= line.size()) break;
        std::size_t value = 0;
        const char* begin = line.data() + pos;
        const char* end = line.data() + line.size();
        auto [ptr, ec] = std::from_chars(begin, end, value);
        if (ec != std::errc{} || (ptr != end && *ptr != ' ' && *ptr != '\t')) {
            throw ParseError(line_no, "expected a non-negative integer in '" + std::string(line) + "'");
        }
        out.push_back(value);
        pos = static_cast<std::size_t>(ptr - line.data());
    }
    return out;
}

} // namespace

Graph parse_graph(std::string_view text) {
    std::size_t line_no = 0;
    bool have_header = false;
    std::size_t n = 0;
    std::size_t m = 0;
    std::vector<Edge> edges;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        auto next = text.find('\n', pos);
        if (next == std::string_view::npos) next = text.size();
        std::string_view line = text.substr(pos, next - pos);
        pos = next + 1;
        ++line_no;
        if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto nums = parse_numbers(line, line_no);
        if (nums.size() != 2) {
            throw ParseError(line_no, have_header ? "expected 'u v'" : "expected header 'n m'");
        }
        if (!have_header) {
            n = nums[0];
            m = nums[1];
            have_header = true;
            edges.reserve(m);
            continue;
        }
        if (edges.size() == m) throw ParseError(line_no, "more edge lines than declared");
        if (nums[0] == nums[1]) {
            throw Error(ErrorKind::LoopEdge, "line " + std::to_string(line_no) + ": loop at vertex " +
                                                 std::to_string(nums[0]));
        }
        if (nums[0] >= n || nums[1] >= n) {
            throw Error(ErrorKind::IndexOutOfRange,
                        "line " + std::to_string(line_no) + ": endpoint out of range for n=" + std::to_string(n));
        }
        edges.push_back(Edge{nums[0], nums[1]});
    }
    if (!have_header) throw ParseError(line_no, "missing header 'n m'");
    if (edges.size() != m) {
        throw ParseError(line_no, "declared " + std::to_string(m) + " edges, found " + std::to_string(edges.size()));
    }
    return Graph(n, edges);
}

std::string serialize_graph(const Graph& g) {
    std::ostringstream out;
    out << g.order() << ' ' << g.size() << '\n';
    for (const Edge& e : g.edges()) out << e.u << ' ' << e.v << '\n';
    return out.str();
}

// --------------------------------------------------------------- invariants

std::vector<VertexSet> components(const Graph& g) {
    const std::size_t n = g.order();
    std::vector<int> seen(n, 0);
    std::vector<VertexSet> out;
    std::vector<Vertex> stack;
    for (Vertex s = 0; s < n; ++s) {
        if (seen[s]) continue;
        std::vector<Vertex> comp;
        stack.push_back(s);
        seen[s] = 1;
        while (!stack.empty()) {
            const Vertex v = stack.back();
            stack.pop_back();
            comp.push_back(v);
            for (Vertex w : g.neighbors(v)) {
                if (!seen[w]) {
                    seen[w] = 1;
                    stack.push_back(w);
                }
            }
        }
        out.emplace_back(std::move(comp));
    }
    return out;
}

bool is_connected(const Graph& g) { return g.order() > 0 && components(g).size() == 1; }

std::size_t cyclomatic_number(const Graph& g) {
    return g.size() + components(g).size() - g.order();
}

bool is_forest(const Graph& g) { return cyclomatic_number(g) == 0; }

bool is_tree(const Graph& g) { return is_connected(g) && g.size() + 1 == g.order(); }

bool is_path_graph(const Graph& g) {
    if (!is_tree(g)) return false;
    for (Vertex v = 0; v < g.order(); ++v) {
        if (g.degree(v) > 2) return false;
    }
    return true;
}

bool is_cycle_graph(const Graph& g) {
    if (g.order() < 3 || !is_connected(g)) return false;
    for (Vertex v = 0; v < g.order(); ++v) {
        if (g.degree(v) != 2) return false;
    }
    return true;
}

VertexSet pendant_vertices(const Graph& g) {
    std::vector<Vertex> out;
    for (Vertex v = 0; v < g.order(); ++v) {
        if (g.degree(v) == 1) out.push_back(v);
    }
    return VertexSet(std::move(out));
}

// ------------------------------------------------------------------ editing

SubgraphMap induced_subgraph(const Graph& g, const VertexSet& keep) {
    const std::size_t n = g.order();
    constexpr auto absent = std::numeric_limits<Vertex>::max();
    std::vector<Vertex> to_child(n, absent);
    for (std::size_t i = 0; i < keep.size(); ++i) {
        if (keep[i] >= n) {
            throw Error(ErrorKind::IndexOutOfRange, "vertex " + std::to_string(keep[i]) + " out of range");
        }
        to_child[keep[i]] = i;
    }
    std::vector<Edge> edges;
    for (const Edge& e : g.edges()) {
        if (to_child[e.u] != absent && to_child[e.v] != absent) {
            edges.push_back(Edge{to_child[e.u], to_child[e.v]});
        }
    }
    return SubgraphMap{Graph(keep.size(), edges), keep.ids()};
}

SubgraphMap delete_vertices(const Graph& g, const VertexSet& removed) {
    for (Vertex v : removed) {
        if (v >= g.order()) {
            throw Error(ErrorKind::IndexOutOfRange, "vertex " + std::to_string(v) + " out of range");
        }
    }
    return induced_subgraph(g, removed.complement(g.order()));
}

Graph delete_edge(const Graph& g, Edge e) {
    e = make_edge(e.u, e.v);
    if (!g.has_edge(e.u, e.v)) {
        throw Error(ErrorKind::MissingEdge,
                    "edge (" + std::to_string(e.u) + "," + std::to_string(e.v) + ") not present");
    }
    std::vector<Edge> edges;
    edges.reserve(g.size() - 1);
    for (const Edge& f : g.edges()) {
        if (f != e) edges.push_back(f);
    }
    return Graph(g.order(), edges);
}

Graph add_edge(const Graph& g, Edge e) {
    std::vector<Edge> edges(g.edges().begin(), g.edges().end());
    edges.push_back(e);
    return Graph(g.order(), edges);
}

std::vector<std::size_t> distances_from(const Graph& g, Vertex source) {
    std::vector<std::size_t> dist(g.order(), std::numeric_limits<std::size_t>::max());
    std::queue<Vertex> queue;
    dist.at(source) = 0;
    queue.push(source);
    while (!queue.empty()) {
        const Vertex v = queue.front();
        queue.pop();
        for (Vertex w : g.neighbors(v)) {
            if (dist[w] == std::numeric_limits<std::size_t>::max()) {
                dist[w] = dist[v] + 1;
                queue.push(w);
            }
        }
    }
    return dist;
}

Graph relabel(const Graph& g, std::span<const Vertex> perm) {
    if (perm.size() != g.order()) {
        throw Error(ErrorKind::DimensionMismatch, "permutation size does not match graph order");
    }
    std::vector<Edge> edges;
    edges.reserve(g.size());
    for (const Edge& e : g.edges()) edges.push_back(Edge{perm[e.u], perm[e.v]});
    return Graph(g.order(), edges);
}

std::vector<Vertex> path_order(const Graph& g) {
    if (!is_path_graph(g)) throw Error(ErrorKind::NotAPath, "graph is not a path");
    std::vector<Vertex> order;
    if (g.order() == 1) return {0};
    Vertex start = 0;
    while (g.degree(start) != 1) ++start;
    Vertex prev = start;
    Vertex cur = start;
    order.push_back(start);
    while (order.size() < g.order()) {
        for (Vertex w : g.neighbors(cur)) {
            if (w != prev) {
                prev = cur;
                cur = w;
                break;
            }
        }
        order.push_back(cur);
    }
    return order;
}

std::vector<Vertex> cycle_order(const Graph& g) {
    if (!is_cycle_graph(g)) throw Error(ErrorKind::NotACycle, "graph is not a cycle");
    std::vector<Vertex> order{0};
    Vertex prev = 0;
    Vertex cur = g.neighbors(0)[0];
    while (cur != 0) {
        order.push_back(cur);
        const auto nb = g.neighbors(cur);
        const Vertex next = nb[0] == prev ? nb[1] : nb[0];
        prev = cur;
        cur = next;
    }
    return order;
}

} // namespace specmult
