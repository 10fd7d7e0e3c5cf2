#include "doctest.h"

#include "specmult/errors.hpp"
#include "specmult/families.hpp"
#include "specmult/graph.hpp"

#include <algorithm>
#include <numeric>
#include <random>

using namespace specmult;

namespace {

Graph random_graph(std::size_t n, double p, std::mt19937_64& rng) {
    std::bernoulli_distribution coin(p);
    std::vector<Edge> edges;
    for (Vertex u = 0; u < n; ++u) {
        for (Vertex v = u + 1; v < n; ++v) {
            if (coin(rng)) edges.push_back(Edge{u, v});
        }
    }
    return Graph(n, edges);
}

// Reachability by repeated relaxation; deliberately not BFS.
bool reachable(const Graph& g, Vertex a, Vertex b) {
    std::vector<bool> seen(g.order(), false);
    seen[a] = true;
    bool changed = true;
    while (changed) {
        changed = false;
        for (const Edge& e : g.edges()) {
            if (seen[e.u] != seen[e.v]) {
                seen[e.u] = seen[e.v] = true;
                changed = true;
            }
        }
    }
    return seen[b];
}

} // namespace

TEST_CASE("parse_graph reads the edge-list format") {
    const Graph c4 = parse_graph("4 4\n0 1\n1 2\n2 3\n3 0\n");
    CHECK(c4.order() == 4);
    CHECK(c4.size() == 4);
    CHECK(is_cycle_graph(c4));
    CHECK(c4.has_edge(0, 3));

    const Graph k1 = parse_graph("1 0\n");
    CHECK(k1.order() == 1);
    CHECK(k1.size() == 0);

    const Graph tri = parse_graph("# a triangle\n3 3\n0 1\n1 2\n\n0 2\n");
    CHECK(tri == families::cycle(3));
}

TEST_CASE("parse_graph rejects malformed input") {
    CHECK_THROWS_AS(parse_graph("3 1\n1 1\n"), Error);
    try {
        parse_graph("3 1\n1 1\n");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::LoopEdge);
    }
    try {
        parse_graph("3 2\n0 1\n1 0\n");
        FAIL("expected duplicate edge");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::DuplicateEdge);
    }
    try {
        parse_graph("3 1\n0 3\n");
        FAIL("expected index error");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::IndexOutOfRange);
    }
    try {
        parse_graph("3 2\n0 1\n");
        FAIL("expected count mismatch");
    } catch (const ParseError& e) {
        CHECK(e.kind() == ErrorKind::Parse);
    }
    CHECK_THROWS_AS(parse_graph("3 1\n0 x\n"), ParseError);
    CHECK_THROWS_AS(parse_graph(""), ParseError);
}

TEST_CASE("cyclomatic number") {
    CHECK(cyclomatic_number(families::cycle(4)) == 1);
    CHECK(cyclomatic_number(families::path(5)) == 0);
    CHECK(cyclomatic_number(families::star(4)) == 0);
    CHECK(cyclomatic_number(families::theta(2, 2, 1)) == 2);
    CHECK(families::theta(2, 2, 1).order() == 4);
    CHECK(families::theta(2, 2, 1).size() == 5);
    CHECK(cyclomatic_number(families::disjoint_union(families::cycle(3), families::cycle(4))) == 2);
}

TEST_CASE("pendant vertices") {
    CHECK(pendant_vertices(families::path(4)) == VertexSet{0, 3});
    CHECK(pendant_vertices(families::star(3)) == VertexSet{1, 2, 3});
    CHECK(pendant_vertices(families::cycle(5)).empty());
}

TEST_CASE("components") {
    const auto comps = components(families::disjoint_union(families::cycle(3), families::path(2)));
    REQUIRE(comps.size() == 2);
    std::vector<std::size_t> sizes{comps[0].size(), comps[1].size()};
    std::sort(sizes.begin(), sizes.end());
    CHECK(sizes == std::vector<std::size_t>{2, 3});
    CHECK(components(families::cycle(6)).size() == 1);
    CHECK(components(Graph(4)).size() == 4);
}

TEST_CASE("delete_vertices and delete_edge") {
    const auto star_minus_center = delete_vertices(families::star(3), VertexSet{0});
    CHECK(star_minus_center.child.order() == 3);
    CHECK(star_minus_center.child.size() == 0);
    CHECK(star_minus_center.to_parent == std::vector<Vertex>{1, 2, 3});

    const auto c4_minus = delete_vertices(families::cycle(4), VertexSet{2});
    CHECK(is_path_graph(c4_minus.child));
    CHECK(c4_minus.child.order() == 3);

    const auto same = delete_vertices(families::cycle(4), VertexSet{});
    CHECK(same.child == families::cycle(4));
    CHECK(same.to_parent == std::vector<Vertex>{0, 1, 2, 3});

    CHECK_THROWS_AS(delete_vertices(families::cycle(4), VertexSet{4}), Error);

    CHECK(is_path_graph(delete_edge(families::cycle(4), Edge{0, 3})));
    const Graph p2 = delete_edge(families::path(2), Edge{0, 1});
    CHECK(p2.order() == 2);
    CHECK(p2.size() == 0);
    try {
        delete_edge(families::path(3), Edge{0, 2});
        FAIL("expected missing edge");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::MissingEdge);
    }
}

TEST_CASE("property: forests are exactly the graphs with cyclomatic number zero") {
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 300; ++trial) {
        const std::size_t n = 1 + rng() % 9;
        const Graph g = random_graph(n, 0.25 + 0.1 * static_cast<double>(trial % 4), rng);
        // Independent acyclicity test: a graph is a forest iff every edge is a
        // bridge, i.e. its endpoints disconnect after removing it.
        bool forest = true;
        for (const Edge& e : g.edges()) forest = forest && !reachable(delete_edge(g, e), e.u, e.v);
        CHECK(is_forest(g) == forest);
        CHECK((cyclomatic_number(g) == 0) == forest);
    }
}

TEST_CASE("property: components partition the vertex set") {
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 200; ++trial) {
        const std::size_t n = 1 + rng() % 10;
        const Graph g = random_graph(n, 0.2, rng);
        const auto comps = components(g);
        std::size_t total = 0;
        std::vector<int> which(n, -1);
        for (std::size_t c = 0; c < comps.size(); ++c) {
            total += comps[c].size();
            for (Vertex v : comps[c]) which[v] = static_cast<int>(c);
        }
        CHECK(total == n);
        for (Vertex a = 0; a < n; ++a) {
            for (Vertex b = a + 1; b < n; ++b) CHECK((which[a] == which[b]) == reachable(g, a, b));
        }
    }
}

TEST_CASE("property: successive deletions equal one deletion of the union") {
    std::mt19937_64 rng(13);
    for (int trial = 0; trial < 200; ++trial) {
        const std::size_t n = 2 + rng() % 8;
        const Graph g = random_graph(n, 0.4, rng);
        std::vector<Vertex> a;
        std::vector<Vertex> b;
        for (Vertex v = 0; v < n; ++v) {
            const auto r = rng() % 3;
            if (r == 0) a.push_back(v);
            else if (r == 1) b.push_back(v);
        }
        const VertexSet sa(a);
        const VertexSet sb(b);
        const auto first = delete_vertices(g, sa);
        // Translate sb into child ids of the first deletion.
        std::vector<Vertex> sb_child;
        for (Vertex c = 0; c < first.to_parent.size(); ++c) {
            if (sb.contains(first.to_parent[c])) sb_child.push_back(c);
        }
        const auto second = delete_vertices(first.child, VertexSet(sb_child));
        const auto once = delete_vertices(g, sa.unite(sb));
        CHECK(second.child == once.child);
        std::vector<Vertex> composed;
        for (Vertex c : second.to_parent) composed.push_back(first.to_parent[c]);
        CHECK(composed == once.to_parent);
    }
}

TEST_CASE("property: serialization round-trips") {
    std::mt19937_64 rng(17);
    for (int trial = 0; trial < 100; ++trial) {
        const Graph g = random_graph(1 + rng() % 12, 0.3, rng);
        CHECK(parse_graph(serialize_graph(g)) == g);
    }
}

TEST_CASE("relabel, paths and cycles") {
    const Graph c5 = families::cycle(5);
    std::vector<Vertex> perm{3, 0, 4, 1, 2};
    const Graph r = relabel(c5, perm);
    CHECK(is_cycle_graph(r));
    CHECK(r.has_edge(3, 0));
    const auto order = cycle_order(c5);
    CHECK(order.size() == 5);
    const auto po = path_order(relabel(families::path(4), std::vector<Vertex>{2, 0, 3, 1}));
    CHECK(po.size() == 4);
    CHECK((po.front() == 2 || po.front() == 1));
    CHECK_THROWS_AS(cycle_order(families::path(4)), Error);
    const auto d = distances_from(families::path(4), 0);
    CHECK(d == std::vector<std::size_t>{0, 1, 2, 3});
}
