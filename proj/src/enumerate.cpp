#include "specmult/enumerate.hpp"

#include "specmult/families.hpp"

#include <algorithm>
#include <numeric>
#include <string>

namespace specmult {

namespace {

void check_order(std::size_t n, std::size_t lo, std::size_t cap, const char* what) {
    if (n > cap) throw Error(ErrorKind::CapExceeded, std::string(what) + ": order above cap " + std::to_string(cap));
    if (n < lo) throw Error(ErrorKind::ParameterOutOfRange, std::string(what) + ": order below " + std::to_string(lo));
}

// One round of refinement. Returns the sorted signature list (flattened, each
// signature prefixed by its length) and writes the new colours.
std::vector<std::uint32_t> refine_round(const Graph& g, std::vector<std::uint32_t>& colour) {
    const std::size_t n = g.order();
    std::vector<std::vector<std::uint32_t>> sig(n);
    for (Vertex v = 0; v < n; ++v) {
        sig[v].push_back(colour[v]);
        std::vector<std::uint32_t> nb;
        for (Vertex w : g.neighbors(v)) nb.push_back(colour[w]);
        std::sort(nb.begin(), nb.end());
        sig[v].insert(sig[v].end(), nb.begin(), nb.end());
    }
    std::vector<std::vector<std::uint32_t>> sorted = sig;
    std::sort(sorted.begin(), sorted.end());
    std::vector<std::vector<std::uint32_t>> distinct = sorted;
    distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
    for (Vertex v = 0; v < n; ++v) {
        colour[v] = static_cast<std::uint32_t>(std::lower_bound(distinct.begin(), distinct.end(), sig[v]) - distinct.begin());
    }
    std::vector<std::uint32_t> flat;
    for (const auto& s : sorted) {
        flat.push_back(static_cast<std::uint32_t>(s.size()));
        flat.insert(flat.end(), s.begin(), s.end());
    }
    return flat;
}

std::size_t colour_count(const std::vector<std::uint32_t>& c) {
    std::vector<std::uint32_t> s = c;
    std::sort(s.begin(), s.end());
    return static_cast<std::size_t>(std::unique(s.begin(), s.end()) - s.begin());
}

// Runs refinement to a fixed point; collects the per-round keys if asked.
std::vector<std::uint32_t> refine(const Graph& g, std::vector<std::uint32_t>* key) {
    std::vector<std::uint32_t> colour(g.order());
    for (Vertex v = 0; v < g.order(); ++v) colour[v] = static_cast<std::uint32_t>(g.degree(v));
    std::size_t classes = 0;
    for (;;) {
        auto flat = refine_round(g, colour);
        if (key) key->insert(key->end(), flat.begin(), flat.end());
        const std::size_t now = colour_count(colour);
        if (now == classes) break;
        classes = now;
    }
    return colour;
}

Graph add_leaf(const Graph& g, Vertex at) {
    std::vector<Edge> edges(g.edges().begin(), g.edges().end());
    edges.push_back(Edge{at, static_cast<Vertex>(g.order())});
    return Graph(g.order() + 1, edges);
}

} // namespace

std::vector<std::uint32_t> refined_colours(const Graph& g) { return refine(g, nullptr); }

std::vector<std::uint32_t> invariant_key(const Graph& g) {
    std::vector<std::uint32_t> key{static_cast<std::uint32_t>(g.order()), static_cast<std::uint32_t>(g.size())};
    refine(g, &key);
    return key;
}

bool isomorphic(const Graph& a, const Graph& b) {
    const std::size_t n = a.order();
    if (n != b.order() || a.size() != b.size()) return false;
    if (n == 0) return true;
    std::vector<std::uint32_t> ka{0}, kb{0};
    const auto ca = refine(a, &ka);
    const auto cb = refine(b, &kb);
    if (ka != kb) return false;

    // Visit a in BFS order from a vertex of the rarest colour, so every vertex
    // after the first in its component has an already mapped neighbour.
    std::vector<std::size_t> freq(n + 1, 0);
    for (auto c : ca) ++freq[c];
    std::vector<Vertex> order;
    std::vector<char> seen(n, 0);
    while (order.size() < n) {
        Vertex start = 0;
        std::size_t best = n + 1;
        for (Vertex v = 0; v < n; ++v) {
            if (!seen[v] && freq[ca[v]] < best) {
                best = freq[ca[v]];
                start = v;
            }
        }
        seen[start] = 1;
        std::size_t head = order.size();
        order.push_back(start);
        while (head < order.size()) {
            const Vertex v = order[head++];
            for (Vertex w : a.neighbors(v)) {
                if (!seen[w]) {
                    seen[w] = 1;
                    order.push_back(w);
                }
            }
        }
    }

    std::vector<Vertex> map(n, n);
    std::vector<char> used(n, 0);
    std::function<bool(std::size_t)> extend = [&](std::size_t k) -> bool {
        if (k == n) return true;
        const Vertex v = order[k];
        for (Vertex t = 0; t < n; ++t) {
            if (used[t] || cb[t] != ca[v]) continue;
            bool ok = true;
            for (std::size_t j = 0; j < k && ok; ++j) {
                ok = a.has_edge(v, order[j]) == b.has_edge(t, map[order[j]]);
            }
            if (!ok) continue;
            map[v] = t;
            used[t] = 1;
            if (extend(k + 1)) return true;
            used[t] = 0;
        }
        return false;
    };
    return extend(0);
}

bool IsoClassSet::insert(const Graph& g) {
    auto& bucket = buckets_[invariant_key(g)];
    for (std::size_t idx : bucket) {
        if (isomorphic(graphs_[idx], g)) return false;
    }
    bucket.push_back(graphs_.size());
    graphs_.push_back(g);
    return true;
}

// ---- trees ----------------------------------------------------------------------

Graph tree_from_pruefer(std::span<const Vertex> seq) {
    const std::size_t n = seq.size() + 2;
    std::vector<std::size_t> degree(n, 1);
    for (Vertex v : seq) {
        if (v >= n) throw Error(ErrorKind::InvalidArgument, "Pruefer entry out of range");
        ++degree[v];
    }
    std::vector<Edge> edges;
    for (Vertex v : seq) {
        for (Vertex leaf = 0; leaf < n; ++leaf) {
            if (degree[leaf] == 1) {
                edges.push_back(Edge{std::min(leaf, v), std::max(leaf, v)});
                --degree[leaf];
                --degree[v];
                break;
            }
        }
    }
    Vertex u = n, w = n;
    for (Vertex v = 0; v < n; ++v) {
        if (degree[v] == 1) (u == n ? u : w) = v;
    }
    edges.push_back(Edge{u, w});
    return Graph(n, edges);
}

void for_each_labeled_tree(std::size_t n, const std::function<bool(const Graph&)>& fn) {
    check_order(n, 2, caps::labeled_trees, "labeled trees");
    std::vector<Vertex> seq(n - 2, 0);
    for (;;) {
        if (!fn(tree_from_pruefer(seq))) return;
        std::size_t i = seq.size();
        while (i > 0 && seq[i - 1] == n - 1) seq[--i] = 0;
        if (i == 0) return;
        ++seq[i - 1];
    }
}

std::vector<Graph> unlabeled_trees(std::size_t n) {
    check_order(n, 1, caps::unlabeled_trees, "unlabeled trees");
    std::vector<Graph> level{Graph(1)};
    for (std::size_t k = 2; k <= n; ++k) {
        IsoClassSet next;
        for (const Graph& t : level) {
            for (Vertex v = 0; v < t.order(); ++v) next.insert(add_leaf(t, v));
        }
        level = next.graphs();
    }
    return level;
}

std::vector<Graph> enumerate_trees(std::size_t n, bool dedup) {
    if (dedup) return unlabeled_trees(n);
    std::vector<Graph> out;
    for_each_labeled_tree(n, [&](const Graph& t) {
        out.push_back(t);
        return true;
    });
    return out;
}

// ---- unicyclic and connected -----------------------------------------------------

std::vector<Graph> enumerate_unicyclic(std::size_t n) {
    check_order(n, 3, caps::unicyclic, "unicyclic graphs");
    // A unicyclic graph other than a cycle has a leaf whose removal leaves a
    // unicyclic graph, so growing by leaves from the cycles reaches them all.
    std::vector<Graph> level{families::cycle(3)};
    for (std::size_t k = 4; k <= n; ++k) {
        IsoClassSet next;
        next.insert(families::cycle(k));
        for (const Graph& g : level) {
            for (Vertex v = 0; v < g.order(); ++v) next.insert(add_leaf(g, v));
        }
        level = next.graphs();
    }
    return level;
}

std::uint64_t edge_subset_count(std::size_t n) { return std::uint64_t{1} << (n * (n - 1) / 2); }

std::optional<Graph> connected_from_mask(std::size_t n, std::uint64_t mask) {
    // Union-find on the fly, before building the adjacency lists.
    std::vector<Vertex> parent(n);
    std::iota(parent.begin(), parent.end(), Vertex{0});
    auto find = [&](Vertex x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    std::vector<Edge> edges;
    std::size_t bit = 0;
    std::size_t parts = n;
    for (Vertex i = 0; i < n; ++i) {
        for (Vertex j = i + 1; j < n; ++j, ++bit) {
            if (!((mask >> bit) & 1U)) continue;
            edges.push_back(Edge{i, j});
            const Vertex a = find(i), b = find(j);
            if (a != b) {
                parent[a] = b;
                --parts;
            }
        }
    }
    if (parts != 1) return std::nullopt;
    return Graph(n, edges);
}

void for_each_connected_labeled(std::size_t n, const std::function<bool(const Graph&)>& fn) {
    check_order(n, 1, caps::connected, "connected graphs");
    const std::uint64_t total = edge_subset_count(n);
    for (std::uint64_t mask = 0; mask < total; ++mask) {
        if (auto g = connected_from_mask(n, mask)) {
            if (!fn(*g)) return;
        }
    }
}

std::vector<Graph> enumerate_connected(std::size_t n) {
    check_order(n, 1, caps::connected, "connected graphs");
    // Every connected graph has a vertex whose removal keeps it connected.
    std::vector<Graph> level{Graph(1)};
    for (std::size_t k = 2; k <= n; ++k) {
        IsoClassSet next;
        for (const Graph& g : level) {
            const std::size_t m = g.order();
            for (std::uint64_t s = 1; s < (std::uint64_t{1} << m); ++s) {
                std::vector<Edge> edges(g.edges().begin(), g.edges().end());
                for (Vertex v = 0; v < m; ++v) {
                    if ((s >> v) & 1U) edges.push_back(Edge{v, static_cast<Vertex>(m)});
                }
                next.insert(Graph(m + 1, edges));
            }
        }
        level = next.graphs();
    }
    return level;
}

// ---- named shapes -----------------------------------------------------------------

std::vector<ShapeInstance> cstar_shapes(std::size_t max_order) {
    if (max_order > caps::cstar) throw Error(ErrorKind::CapExceeded, "C* shapes: order above cap");
    std::vector<ShapeInstance> out;
    for (std::size_t m = 3; m + 1 <= max_order; ++m) {
        for (std::size_t k = 0; m + 1 + k <= max_order; ++k) {
            out.push_back({families::cstar(m, k), "cstar(" + std::to_string(m) + "," + std::to_string(k) + ")"});
        }
    }
    return out;
}

std::vector<ShapeInstance> theta_infinity_graphs(std::size_t max_param) {
    if (max_param > caps::theta_infinity_param) throw Error(ErrorKind::CapExceeded, "theta/infinity: parameter above cap");
    std::vector<ShapeInstance> out;
    auto name = [](const char* f, std::size_t p, std::size_t q, std::size_t l) {
        return std::string(f) + "(" + std::to_string(p) + "," + std::to_string(q) + "," + std::to_string(l) + ")";
    };
    for (std::size_t p = 1; p <= max_param; ++p) {
        for (std::size_t q = std::max<std::size_t>(p, 2); q <= max_param; ++q) {
            for (std::size_t l = q; l <= max_param; ++l) out.push_back({families::theta(p, q, l), name("theta", p, q, l)});
        }
    }
    for (std::size_t p = 3; p <= max_param; ++p) {
        for (std::size_t q = p; q <= max_param; ++q) {
            for (std::size_t l = 1; l <= max_param; ++l) {
                out.push_back({families::infinity(p, q, l), name("infinity", p, q, l)});
            }
        }
    }
    return out;
}

} // namespace specmult
