#include "doctest.h"

#include "specmult/families.hpp"
#include "specmult/theorems.hpp"

#include <array>
#include <cmath>
#include <numbers>

using namespace specmult;
namespace fam = specmult::families;

namespace {

// Oracle: n - rank(A - lambda I) by fraction-based elimination, independent
// of the probe and its caches.
std::size_t nullity_at(const ExactMatrix& b, long lambda) {
    auto m = b.entries();
    for (std::size_t i = 0; i < b.dim(); ++i) m(i, i) -= GaussianRational(lambda);
    return b.dim() - exact_rank(std::move(m));
}

std::size_t adj_mult(const Graph& g, long lambda) { return nullity_at(adjacency_exact(g), lambda); }

Graph spider(std::initializer_list<std::size_t> legs) {
    const std::vector<std::size_t> v(legs);
    return fam::spider(v);
}

Graph from_edges(std::size_t n, std::initializer_list<std::pair<Vertex, Vertex>> edges) { return Graph(n, edges); }

Eigenvalue rat(long v) { return Eigenvalue::rational(mpq_class(v)); }

} // namespace

TEST_CASE("upper bound examples") {
    const Graph c6 = fam::cycle(6);
    const auto r = check_upper_bound(c6, adjacency_exact(c6), rat(1));
    CHECK(r.holds);
    CHECK(r.lhs == 2);
    CHECK(r.rhs == 2);

    const Graph k13 = fam::star(3);
    const auto s = check_upper_bound(k13, adjacency_exact(k13), rat(0));
    CHECK(s.holds);
    CHECK(s.lhs == 2);
    CHECK(s.rhs == 3);

    const ExactMatrix h1 = fixture_h1();
    const auto h = check_upper_bound(h1.pattern(), h1, rat(2));
    CHECK(h.holds);
    CHECK(h.lhs == 2);
    CHECK(h.rhs == 3);

    CHECK_THROWS_AS(check_upper_bound(fam::disjoint_union(fam::path(2), fam::path(2)),
                                      adjacency_exact(fam::disjoint_union(fam::path(2), fam::path(2))), rat(1)),
                    Error);
    CHECK_THROWS_AS(check_upper_bound(fam::path(3), adjacency_exact(fam::path(4)), rat(0)), Error);
}

TEST_CASE("tree equality predicate") {
    const Graph k13 = fam::star(3);
    const auto a = tree_equality_predicate(k13, adjacency_exact(k13), rat(0));
    CHECK(a.value);
    CHECK(adj_mult(k13, 0) == 2);

    const Graph ds = fam::double_star(2, 2);
    const auto b = tree_equality_predicate(ds, adjacency_exact(ds), rat(0));
    CHECK_FALSE(b.value);
    CHECK(adj_mult(ds, 0) == 2);

    const Graph p7 = fam::path(7);
    CHECK(tree_equality_predicate(p7, random_in_S(p7, 11), rat(0)).value);

    CHECK_THROWS_AS(tree_equality_predicate(fam::cycle(4), adjacency_exact(fam::cycle(4)), rat(0)), Error);
}

TEST_CASE("property: tree predicate matches m = p - 1 on spiders at lambda in {0, 1, -1}") {
    const std::array<std::array<std::size_t, 3>, 8> legs{{{1, 1, 1}, {1, 1, 2}, {1, 1, 3}, {2, 2, 2}, {1, 2, 3},
                                                           {3, 3, 3}, {1, 3, 3}, {2, 2, 3}}};
    for (const auto& l : legs) {
        const Graph t = fam::spider(l);
        const ExactMatrix a = adjacency_exact(t);
        for (long lambda : {0L, 1L, -1L}) {
            const bool pred = tree_equality_predicate(t, a, rat(lambda)).value;
            CHECK(pred == (nullity_at(a, lambda) == 2));
        }
    }
}

TEST_CASE("unicyclic equality predicate") {
    // Triangle 0,1,2; 0 - w(3); w adjacent to leaves 4 and 5.
    const Graph g = from_edges(6, {{0, 1}, {1, 2}, {2, 0}, {0, 3}, {3, 4}, {3, 5}});
    const ExactMatrix a = adjacency_exact(g);
    const auto r = unicyclic_equality_predicate(g, a, rat(0));
    // 2 theta + p - 1 = 3
    CHECK(r.value == (nullity_at(a, 0) == 3));

    // Two cycle majors.
    const Graph two = from_edges(5, {{0, 1}, {1, 2}, {2, 0}, {0, 3}, {1, 4}});
    CHECK_FALSE(unicyclic_equality_predicate(two, adjacency_exact(two), rat(0)).value);

    CHECK_THROWS_AS(unicyclic_equality_predicate(fam::path(4), adjacency_exact(fam::path(4)), rat(0)), Error);
}

TEST_CASE("classifier on named examples") {
    SUBCASE("C5 at its Perron root") {
        const Graph c5 = fam::cycle(5);
        const auto o = conclusion_classifier(c5, adjacency_exact(c5), rat(2));
        CHECK(o.verdict == Verdict::OneDeficientFormB);
        CHECK(o.multiplicity == 1);
        CHECK(o.agrees());
    }
    SUBCASE("C6 at 1 attains the bound") {
        const Graph c6 = fam::cycle(6);
        const auto o = conclusion_classifier(c6, adjacency_exact(c6), rat(1));
        CHECK(o.verdict == Verdict::AttainsBound);
        CHECK(o.agrees());
    }
    SUBCASE("infinity(3,3,1) at 0") {
        const Graph g = fam::infinity(3, 3, 1);
        const ExactMatrix a = adjacency_exact(g);
        const std::size_t m = nullity_at(a, 0);
        if (m == 0) {
            CHECK_THROWS_AS(conclusion_classifier(g, a, rat(0)), Error);
        } else {
            const auto o = conclusion_classifier(g, a, rat(0));
            CHECK(o.form == "c");
            CHECK(o.multiplicity == m);
            CHECK(o.agrees());
        }
    }
    SUBCASE("two triangles around a center with a P2 tail, lambda = -1") {
        // w = 0; triangles 1,2,3 and 4,5,6 hang from 0 via 1 and 4; tail 7 - 8.
        const Graph g =
            from_edges(9, {{1, 2}, {2, 3}, {3, 1}, {4, 5}, {5, 6}, {6, 4}, {0, 1}, {0, 4}, {0, 7}, {7, 8}});
        const ExactMatrix a = adjacency_exact(g);
        const auto o = conclusion_classifier(g, a, rat(-1));
        CHECK(o.form == "d");
        CHECK(o.multiplicity == nullity_at(a, -1));
        CHECK(o.verdict == Verdict::OneDeficientFormD);
        CHECK(o.agrees());
    }
    SUBCASE("trees") {
        const Graph p3 = fam::path(3);
        const auto path = conclusion_classifier(p3, adjacency_exact(p3), rat(0));
        CHECK(path.verdict == Verdict::OneDeficientFormA);
        const Graph ds = fam::double_star(2, 2);
        const auto o = conclusion_classifier(ds, adjacency_exact(ds), rat(0));
        CHECK(o.verdict == Verdict::TwoPlusDeficient);
        CHECK(o.agrees());
    }
    CHECK_THROWS_AS(conclusion_classifier(fam::cycle(5), adjacency_exact(fam::cycle(5)), rat(0)), Error);
}

TEST_CASE("classifier findings where the stated forms and the multiplicity disagree") {
    // infinity(3,3,3) at -1: one below the bound, yet deleting the connector
    // between the two majors raises the multiplicity to 4.
    const Graph inf = fam::infinity(3, 3, 3);
    const ExactMatrix a = adjacency_exact(inf);
    CHECK(nullity_at(a, -1) == 3);
    const auto o = conclusion_classifier(inf, a, rat(-1));
    CHECK(o.direct == Deficiency::OneDeficient);
    CHECK(o.verdict == Verdict::TwoPlusDeficient);
    CHECK_FALSE(o.agrees());

    // C4 on 0..3 with a tail 0-4-5 and x = 6 next to 0 carrying leaves 7, 8.
    // Every clause of form (d) holds at 0, but the nullity is 3 rather than 4.
    const Graph d = from_edges(9, {{0, 1}, {1, 2}, {2, 3}, {3, 0}, {0, 4}, {4, 5}, {0, 6}, {6, 7}, {6, 8}});
    const ExactMatrix ad = adjacency_exact(d);
    CHECK(nullity_at(ad, 0) == 3);
    const auto od = conclusion_classifier(d, ad, rat(0));
    CHECK(od.verdict == Verdict::OneDeficientFormD);
    CHECK(od.direct == Deficiency::TwoPlusDeficient);
    CHECK_FALSE(od.agrees());
    // The unicyclic lemma's degree-3 clause rejects it.
    CHECK_FALSE(unicyclic_equality_predicate(d, ad, rat(0)).value);
}

TEST_CASE("property: classifier agrees with the multiplicity on random unicyclic graphs with leaves") {
    std::size_t checked = 0;
    for (std::uint64_t seed = 0; seed < 40; ++seed) {
        // Cycle of length 3..6 with a few pendant trees grown at random.
        const std::size_t len = 3 + seed % 4;
        Graph g = fam::cycle(len);
        std::uint64_t s = seed * 2654435761u + 17;
        const std::size_t extra = 1 + seed % 4;
        for (std::size_t i = 0; i < extra; ++i) {
            s = s * 6364136223846793005ULL + 1442695040888963407ULL;
            const Vertex parent = static_cast<Vertex>((s >> 33) % g.order());
            std::vector<Edge> edges(g.edges().begin(), g.edges().end());
            edges.push_back(Edge{parent, static_cast<Vertex>(g.order())});
            g = Graph(g.order() + 1, edges);
        }
        const ExactMatrix a = adjacency_exact(g);
        const auto spectrum = certify_spectrum(a);
        REQUIRE(spectrum.complete);
        for (const auto& ev : spectrum.eigenvalues) {
            const auto o = conclusion_classifier(MultiplicityProbe(a, ev.lambda));
            CHECK(o.multiplicity == ev.multiplicity);
            // Classes (a)-(c) and paths are never reached here; form (d)
            // admits known exceptions, so only the other verdicts are pinned.
            if (o.verdict != Verdict::OneDeficientFormD) {
                CHECK_MESSAGE(o.agrees(), serialize_graph(g), " ", ev.lambda.to_string());
            }
            ++checked;
        }
    }
    CHECK(checked > 100);
}

TEST_CASE("C* predicate") {
    // C6 + w + P2 at -1.
    const Graph a = fam::cstar(6, 2);
    CHECK(cstar_adjacency_predicate(a, rat(-1)).value);
    CHECK(adj_mult(a, -1) == 2);

    const Graph b = fam::cstar(4, 1);
    CHECK(cstar_adjacency_predicate(b, rat(0)).value);
    CHECK(adj_mult(b, 0) == 2);

    const Graph c = fam::cstar(5, 1);
    CHECK_FALSE(cstar_adjacency_predicate(c, rat(0)).value);
    CHECK(adj_mult(c, 0) != 2);

    // Empty P*: the predicate is false; C_m plus a pendant edge never reaches 2.
    for (std::size_t m = 3; m <= 8; ++m) {
        const Graph e = fam::cstar(m, 0);
        for (long lambda = -2; lambda <= 2; ++lambda) {
            CHECK_FALSE(cstar_adjacency_predicate(e, rat(lambda)).value);
            CHECK(adj_mult(e, lambda) < 2);
        }
    }
    CHECK_THROWS_AS(cstar_adjacency_predicate(fam::path(5), rat(0)), Error);
}

TEST_CASE("fixtures") {
    const auto r = remark_counterexample_check();
    CHECK(r.holds);
    CHECK(r.lhs == nlohmann::json::parse("[2,1,2,1,0]"));

    // Independent oracle on the same numbers.
    const ExactMatrix h1 = fixture_h1();
    const ExactMatrix h2 = fixture_h2();
    CHECK(nullity_at(h1, 2) == 2);
    CHECK(nullity_at(h2, -9) == 2);
    CHECK(nullity_at(principal_submatrix(h2, VertexSet{4, 5}).matrix, -9) == 0);

    // On H1 and H2 the clauses of the C* predicate do not match m = 2.
    CHECK_FALSE(cstar_matrix_predicate(h1, rat(2)).value);
    CHECK_FALSE(cstar_matrix_predicate(h2, rat(-9)).value);

    const ExactMatrix c4 = fixture_modified_c4();
    for (long lambda = -6; lambda <= 6; ++lambda) CHECK(nullity_at(c4, lambda) <= 1);
    const auto numeric = eigenvalues_numeric(to_approx(c4));
    REQUIRE(numeric.values.size() == 4);
    for (std::size_t i = 1; i < 4; ++i) CHECK(numeric.values[i] - numeric.values[i - 1] > 1e-3);
    CHECK(adj_mult(fam::cycle(4), 0) == 2);
}

TEST_CASE("corollaries on trees") {
    CHECK(corollary_nullity_tree(fam::star(3)));
    CHECK(adj_mult(fam::star(3), 0) == 2);
    CHECK_FALSE(corollary_nullity_tree(spider({1, 1, 2})));
    CHECK(adj_mult(spider({1, 1, 2}), 0) < 2);
    CHECK(corollary_nullity_tree(spider({1, 1, 3})));
    CHECK(adj_mult(spider({1, 1, 3}), 0) == 2);

    CHECK(corollary_minus_one_tree(fam::path(5)));
    CHECK(adj_mult(fam::path(5), -1) == 1);
    CHECK(corollary_minus_one_tree(spider({2, 2, 2})));
    CHECK(adj_mult(spider({2, 2, 2}), -1) == 2);
    CHECK_FALSE(corollary_minus_one_tree(fam::star(3)));
    CHECK(adj_mult(fam::star(3), -1) == 0);

    CHECK_THROWS_AS(corollary_nullity_tree(fam::path(4)), Error);
    CHECK_THROWS_AS(corollary_minus_one_tree(fam::cycle(4)), Error);
}

TEST_CASE("relations") {
    const Graph c4 = fam::cycle(4);
    const MultiplicityProbe probe(adjacency_exact(c4), rat(0));
    for (Vertex v = 0; v < 4; ++v) {
        RelationWitness w;
        w.vertex = v;
        const auto r = lemma_relation_check(Relation::InterlaceVertex, probe, w);
        CHECK(r.holds);
        CHECK(r.lhs["m(G)"] == 2);
        CHECK(r.rhs["m(G-v)"] == 1);
    }
    RelationWitness e;
    e.edge = Edge{0, 1};
    CHECK(lemma_relation_check(Relation::InterlaceEdge, probe, e).holds);

    // G = P2 on {0, 1}, H = P2 on {2, 3}, u = 1, v = 2: P4 at 1.
    const Graph p4 = fam::path(4);
    const MultiplicityProbe p4probe(adjacency_exact(p4), rat(1));
    RelationWitness g;
    g.g_side = VertexSet{0, 1};
    g.u = 1;
    g.v = 2;
    const auto guvh = lemma_relation_check(Relation::GuvH, p4probe, g);
    CHECK(guvh.holds);
    CHECK(guvh.lhs["m(GuvH)"] == 0);
    CHECK(guvh.rhs["m(H-v)"] == 0);

    // At 0 the side condition lambda in sigma(G) fails for P2.
    const MultiplicityProbe p4zero(adjacency_exact(p4), rat(0));
    CHECK_THROWS_AS(lemma_relation_check(Relation::GuvH, p4zero, g), Error);

    RelationWitness path;
    path.path = {2, 3};
    CHECK(lemma_relation_check(Relation::PathRemoval, p4zero, path).holds);
    path.path = {0, 2};
    CHECK_THROWS_AS(lemma_relation_check(Relation::PathRemoval, p4zero, path), Error);

    CHECK(parse_relation("theta-infty") == Relation::ThetaInfinity);
    CHECK_THROWS_AS(parse_relation("nope"), Error);
}

TEST_CASE("gain cycle") {
    const double root2 = std::sqrt(2.0);
    const auto r = gain_cycle_check(GainGraph::trivial(fam::cycle(8)), 0.0, root2);
    CHECK(r.holds);
    CHECK(r.lhs == 2);

    // rho = pi: one negative edge. The double values start at j = 0.
    for (std::size_t n = 3; n <= 10; ++n) {
        GainGraph phi = GainGraph::trivial(fam::cycle(n));
        phi.set_gain(0, 1, ApproxComplex(-1, 0));
        for (double alpha : {0.0, 0.25, 0.5, 0.75}) {
            const auto doubles = gain_cycle_double_values(n, alpha, ApproxComplex(-1, 0));
            CHECK(doubles.size() == n / 2);
            for (double lambda : doubles) {
                const auto c = gain_cycle_check(phi, alpha, lambda);
                CHECK(c.holds);
                CHECK(c.lhs == 2);
            }
        }
    }
    CHECK(gain_cycle_double_values(7, 0.0, ApproxComplex(1, 0)).size() == 3);
    CHECK(gain_cycle_double_values(6, 0.0, ApproxComplex(0, 1)).empty());
}
