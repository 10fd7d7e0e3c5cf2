#include "specmult/structure.hpp"

#include "specmult/errors.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <functional>
#include <limits>

namespace specmult {

std::string to_string(Family f) {
    switch (f) {
    case Family::Path: return "Path";
    case Family::Cycle: return "Cycle";
    case Family::ThetaGraph: return "ThetaGraph";
    case Family::InfinityGraph: return "InfinityGraph";
    case Family::CStarShape: return "CStarShape";
    case Family::ClassU: return "ClassU";
    case Family::UnicyclicOther: return "UnicyclicOther";
    case Family::TreeGeneral: return "TreeGeneral";
    case Family::Other: return "Other";
    }
    return "Other";
}

namespace {

void require_connected(const Graph& g) {
    if (!is_connected(g)) throw Error(ErrorKind::NotConnected, "graph is not connected");
}

// Hopcroft-Tarjan biconnected components with an explicit edge stack.
class BlockFinder {
public:
    explicit BlockFinder(const Graph& g)
        : g_(g), disc_(g.order(), unvisited), low_(g.order(), 0) {}

    std::vector<Block> run() {
        for (Vertex s = 0; s < g_.order(); ++s) {
            if (disc_[s] == unvisited) visit(s, std::numeric_limits<Vertex>::max());
        }
        std::sort(out_.begin(), out_.end(), [](const Block& a, const Block& b) {
            return a.vertices.ids() < b.vertices.ids();
        });
        return std::move(out_);
    }

private:
    static constexpr std::size_t unvisited = std::numeric_limits<std::size_t>::max();

    void visit(Vertex v, Vertex parent) {
        disc_[v] = low_[v] = timer_++;
        for (Vertex w : g_.neighbors(v)) {
            if (w == parent) continue;
            if (disc_[w] == unvisited) {
                stack_.push_back(Edge{v, w});
                visit(w, v);
                low_[v] = std::min(low_[v], low_[w]);
                if (low_[w] >= disc_[v]) pop_block(Edge{v, w});
            } else if (disc_[w] < disc_[v]) {
                stack_.push_back(Edge{v, w});
                low_[v] = std::min(low_[v], disc_[w]);
            }
        }
    }

    void pop_block(Edge until) {
        std::vector<Vertex> verts;
        std::size_t edges = 0;
        while (true) {
            const Edge e = stack_.back();
            stack_.pop_back();
            verts.push_back(e.u);
            verts.push_back(e.v);
            ++edges;
            if (e == until) break;
        }
        Block b;
        b.vertices = VertexSet(std::move(verts));
        b.edge_count = edges;
        b.is_cycle_block = b.vertices.size() >= 3 && b.vertices.size() == edges;
        out_.push_back(std::move(b));
    }

    const Graph& g_;
    std::vector<std::size_t> disc_;
    std::vector<std::size_t> low_;
    std::size_t timer_ = 0;
    std::vector<Edge> stack_;
    std::vector<Block> out_;
};

// Walks from `start` (whose previous vertex is `prev`) through degree-2
// vertices; returns the visited degree-2 vertices and the first vertex whose
// degree differs from 2.
std::pair<std::vector<Vertex>, Vertex> walk_degree_two(const Graph& g, Vertex prev, Vertex start) {
    std::vector<Vertex> interior;
    Vertex cur = start;
    while (g.degree(cur) == 2) {
        interior.push_back(cur);
        const auto nb = g.neighbors(cur);
        const Vertex next = nb[0] == prev ? nb[1] : nb[0];
        prev = cur;
        cur = next;
    }
    return {interior, cur};
}

} // namespace

std::vector<Block> blocks(const Graph& g) { return BlockFinder(g).run(); }

VertexSet cycle_vertices(const Graph& g) {
    std::vector<Vertex> out;
    for (const Block& b : blocks(g)) {
        if (b.vertices.size() >= 3) out.insert(out.end(), b.vertices.begin(), b.vertices.end());
    }
    return VertexSet(std::move(out));
}

MajorSets major_sets(const Graph& g) {
    std::vector<Vertex> x;
    for (Vertex v = 0; v < g.order(); ++v) {
        if (g.degree(v) >= 3) x.push_back(v);
    }
    MajorSets out;
    out.X = VertexSet(std::move(x));
    out.M = out.X.minus(cycle_vertices(g));
    return out;
}

std::vector<PendantPath> pendant_paths(const Graph& g) {
    require_connected(g);
    if (is_path_graph(g) || is_cycle_graph(g)) {
        throw Error(ErrorKind::NotApplicable, "pendant paths are undefined for paths and cycles");
    }
    std::vector<PendantPath> out;
    for (Vertex leaf : pendant_vertices(g)) {
        PendantPath path;
        path.vertices.push_back(leaf);
        auto [interior, end] = walk_degree_two(g, leaf, g.neighbors(leaf)[0]);
        path.vertices.insert(path.vertices.end(), interior.begin(), interior.end());
        path.anchor = end;
        out.push_back(std::move(path));
    }
    return out;
}

std::vector<PendantCycle> pendant_cycles(const Graph& g) {
    std::vector<PendantCycle> out;
    for (const Block& b : blocks(g)) {
        if (!b.is_cycle_block) continue;
        std::size_t majors = 0;
        Vertex anchor = 0;
        for (Vertex v : b.vertices) {
            if (g.degree(v) >= 3) {
                ++majors;
                anchor = v;
            }
        }
        if (majors == 1) out.push_back(PendantCycle{b.vertices, anchor});
    }
    return out;
}

bool in_class_u(const Graph& g) {
    return is_connected(g) && cyclomatic_number(g) == 1 && pendant_vertices(g).size() <= 1;
}

namespace {

FamilyTag classify_bicyclic(const Graph& g) {
    // Leaf-free, connected, cyclomatic number 2.
    std::vector<Vertex> deg3;
    std::vector<Vertex> deg4;
    for (Vertex v = 0; v < g.order(); ++v) {
        const auto d = g.degree(v);
        if (d == 3) deg3.push_back(v);
        else if (d == 4) deg4.push_back(v);
        else if (d != 2) return FamilyTag{Family::Other};
    }
    const auto bl = blocks(g);
    if (deg4.size() == 1 && deg3.empty()) {
        // Two cycles sharing one vertex.
        if (bl.size() != 2 || !bl[0].is_cycle_block || !bl[1].is_cycle_block) return FamilyTag{Family::Other};
        std::size_t a = bl[0].vertices.size();
        std::size_t b = bl[1].vertices.size();
        return FamilyTag{Family::InfinityGraph, std::max(a, b), std::min(a, b), 1};
    }
    if (deg3.size() != 2 || !deg4.empty()) return FamilyTag{Family::Other};
    if (bl.size() == 1) {
        std::vector<std::size_t> lengths;
        for (Vertex start : g.neighbors(deg3[0])) {
            auto [interior, end] = walk_degree_two(g, deg3[0], start);
            lengths.push_back(interior.size() + 1);
        }
        std::sort(lengths.rbegin(), lengths.rend());
        return FamilyTag{Family::ThetaGraph, lengths[0], lengths[1], lengths[2]};
    }
    std::vector<std::size_t> cycles;
    std::size_t bridges = 0;
    for (const Block& b : bl) {
        if (b.is_cycle_block) cycles.push_back(b.vertices.size());
        else if (b.vertices.size() == 2) ++bridges;
        else return FamilyTag{Family::Other};
    }
    if (cycles.size() != 2) return FamilyTag{Family::Other};
    return FamilyTag{Family::InfinityGraph, std::max(cycles[0], cycles[1]), std::min(cycles[0], cycles[1]),
                     bridges + 1};
}

} // namespace

CStarParts cstar_parts(const Graph& g) {
    if (!is_connected(g) || cyclomatic_number(g) != 1 || pendant_vertices(g).size() != 1) {
        throw Error(ErrorKind::NotCStarShape, "graph is not a cycle with a single pendant path");
    }
    CStarParts parts;
    parts.cycle = cycle_vertices(g);
    const Vertex leaf = pendant_vertices(g)[0];
    auto [interior, anchor] = walk_degree_two(g, leaf, g.neighbors(leaf)[0]);
    // Tail ordered from the cycle outward: w first, leaf last.
    std::vector<Vertex> tail(interior.rbegin(), interior.rend());
    tail.push_back(leaf);
    parts.cycle_anchor = anchor;
    parts.w = tail.front();
    parts.pstar.assign(tail.begin() + 1, tail.end());
    return parts;
}

FamilyTag classify_family(const Graph& g) {
    require_connected(g);
    if (is_path_graph(g)) return FamilyTag{Family::Path};
    if (is_cycle_graph(g)) return FamilyTag{Family::Cycle, g.order()};
    const std::size_t theta = cyclomatic_number(g);
    const std::size_t p = pendant_vertices(g).size();
    if (theta == 2 && p == 0) {
        auto tag = classify_bicyclic(g);
        if (tag.family != Family::Other) return tag;
    }
    if (theta == 1 && p == 1) {
        const auto parts = cstar_parts(g);
        return FamilyTag{Family::CStarShape, parts.cycle.size(), parts.pstar.size()};
    }
    if (theta == 1 && p <= 1) return FamilyTag{Family::ClassU};
    if (theta == 1) return FamilyTag{Family::UnicyclicOther};
    if (theta == 0) return FamilyTag{Family::TreeGeneral};
    return FamilyTag{Family::Other};
}

StructureReport analyze_structure(const Graph& g) {
    StructureReport r;
    r.omega = components(g).size();
    r.theta = cyclomatic_number(g);
    r.p = pendant_vertices(g).size();
    r.majors = major_sets(g);
    r.blocks = blocks(g);
    r.connected = is_connected(g);
    if (r.connected) {
        r.family = classify_family(g);
        if (r.family.family != Family::Path && r.family.family != Family::Cycle) {
            r.pendant_paths = pendant_paths(g);
        }
    }
    r.pendant_cycles = pendant_cycles(g);
    return r;
}

nlohmann::json to_json(const FamilyTag& tag) {
    nlohmann::json j{{"kind", to_string(tag.family)}};
    switch (tag.family) {
    case Family::ThetaGraph:
    case Family::InfinityGraph:
        j["p"] = tag.p;
        j["q"] = tag.q;
        j["l"] = tag.l;
        break;
    case Family::CStarShape:
        j["cycle_length"] = tag.p;
        j["pstar_length"] = tag.q;
        break;
    case Family::Cycle:
        j["n"] = tag.p;
        break;
    default:
        break;
    }
    return j;
}

nlohmann::json to_json(const StructureReport& r) {
    nlohmann::json blocks_json = nlohmann::json::array();
    for (const Block& b : r.blocks) {
        blocks_json.push_back({{"vertices", b.vertices.ids()},
                               {"edges", b.edge_count},
                               {"is_cycle_block", b.is_cycle_block}});
    }
    nlohmann::json paths_json = nlohmann::json::array();
    for (const PendantPath& p : r.pendant_paths) {
        paths_json.push_back({{"vertices", p.vertices}, {"anchor", p.anchor}});
    }
    nlohmann::json cycles_json = nlohmann::json::array();
    for (const PendantCycle& c : r.pendant_cycles) {
        cycles_json.push_back({{"cycle", c.cycle.ids()}, {"anchor", c.anchor}});
    }
    nlohmann::json j{{"theta", r.theta},
                     {"p", r.p},
                     {"omega", r.omega},
                     {"X", r.majors.X.ids()},
                     {"M", r.majors.M.ids()},
                     {"blocks", blocks_json},
                     {"pendant_paths", paths_json},
                     {"pendant_cycles", cycles_json}};
    j["family"] = r.connected ? to_json(r.family) : nlohmann::json(nullptr);
    return j;
}

} // namespace specmult
