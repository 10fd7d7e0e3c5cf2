#include "specmult/theorems.hpp"

#include "specmult/families.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace specmult {

nlohmann::json to_json(const SubCheck& c) {
    nlohmann::json j{{"name", c.name}, {"holds", c.holds}};
    if (!c.detail.is_null()) j["detail"] = c.detail;
    return j;
}

namespace {

nlohmann::json evidence_json(const Evidence& e) {
    nlohmann::json a = nlohmann::json::array();
    for (const auto& c : e) a.push_back(to_json(c));
    return a;
}

nlohmann::json set_json(const VertexSet& s) { return s.ids(); }

void require_pattern(const Graph& g, const ExactMatrix& b) {
    if (!(b.pattern() == g)) throw Error(ErrorKind::PatternMismatch, "matrix pattern differs from the graph");
}

void require_connected_nontrivial(const Graph& g) {
    if (g.order() < 2) throw Error(ErrorKind::NotApplicable, "graph needs at least two vertices");
    if (!is_connected(g)) throw Error(ErrorKind::NotConnected, "graph is not connected");
}

std::vector<VertexSet> components_without(const Graph& g, const VertexSet& removed) {
    const SubgraphMap sub = delete_vertices(g, removed);
    std::vector<VertexSet> out;
    for (const VertexSet& c : components(sub.child)) {
        std::vector<Vertex> ids;
        for (Vertex v : c) ids.push_back(sub.to_parent[v]);
        out.emplace_back(std::move(ids));
    }
    return out;
}

// Pairs of adjacent vertices inside s.
std::vector<Edge> adjacent_pairs(const Graph& g, const VertexSet& s) {
    std::vector<Edge> out;
    for (std::size_t i = 0; i < s.size(); ++i) {
        for (std::size_t j = i + 1; j < s.size(); ++j) {
            if (g.has_edge(s[i], s[j])) out.push_back(Edge{s[i], s[j]});
        }
    }
    return out;
}

SubCheck independence_check(const Graph& g, const VertexSet& s, const char* name) {
    const auto pairs = adjacent_pairs(g, s);
    nlohmann::json detail = nlohmann::json::array();
    for (const Edge& e : pairs) detail.push_back({e.u, e.v});
    return SubCheck{name, pairs.empty(), {{"adjacent_pairs", detail}}};
}

SubCheck membership_check(const MultiplicityProbe& probe, const VertexSet& s) {
    const std::size_t m = probe.on(s);
    return SubCheck{"lambda in spectrum of path", m > 0, {{"vertices", set_json(s)}, {"multiplicity", m}}};
}

bool all_hold(const Evidence& e) {
    return std::all_of(e.begin(), e.end(), [](const SubCheck& c) { return c.holds; });
}

bool is_theta_or_infinity(const Graph& g) {
    const Family f = classify_family(g).family;
    return f == Family::ThetaGraph || f == Family::InfinityGraph;
}

} // namespace

nlohmann::json to_json(const PredicateResult& r) {
    return {{"value", r.value}, {"certified", r.certified}, {"evidence", evidence_json(r.evidence)}};
}

nlohmann::json to_json(const CheckReport& r) {
    return {{"name", r.name},
            {"holds", r.holds},
            {"lhs", r.lhs},
            {"rhs", r.rhs},
            {"instance", r.instance},
            {"evidence", evidence_json(r.evidence)}};
}

nlohmann::json instance_json(const ExactMatrix& b, const Eigenvalue& lambda) {
    return {{"graph", serialize_graph(b.pattern())}, {"matrix", serialize_matrix(b)}, {"lambda", to_json(lambda)}};
}

// ---- bound -------------------------------------------------------------------------

CheckReport check_upper_bound(const Graph& g, const ExactMatrix& b, const Eigenvalue& lambda) {
    require_pattern(g, b);
    return check_upper_bound(MultiplicityProbe(b, lambda));
}

CheckReport check_upper_bound(const MultiplicityProbe& probe) {
    const Graph& g = probe.matrix().pattern();
    require_connected_nontrivial(g);
    const std::size_t m = probe.whole();
    const std::size_t theta = cyclomatic_number(g);
    const std::size_t p = pendant_vertices(g).size();
    const std::size_t bound = 2 * theta + p;
    const bool cycle = is_cycle_graph(g);
    CheckReport r;
    r.name = "upper_bound";
    r.lhs = m;
    r.rhs = bound;
    r.instance = instance_json(probe.matrix(), probe.lambda());
    r.evidence.push_back({"m <= 2 theta + p", m <= bound, {{"theta", theta}, {"p", p}}});
    if (m == bound) r.evidence.push_back({"equality only on a cycle with m = 2", cycle && m == 2, {{"cycle", cycle}}});
    r.holds = all_hold(r.evidence);
    return r;
}

// ---- trees and unicyclic graphs --------------------------------------------------------

PredicateResult tree_equality_predicate(const Graph& t, const ExactMatrix& b, const Eigenvalue& lambda) {
    require_pattern(t, b);
    return tree_equality_predicate(MultiplicityProbe(b, lambda));
}

PredicateResult tree_equality_predicate(const MultiplicityProbe& probe) {
    const Graph& t = probe.matrix().pattern();
    if (!is_tree(t)) throw Error(ErrorKind::NotATree, "graph is not a tree");
    if (pendant_vertices(t).size() < 2) throw Error(ErrorKind::NotApplicable, "tree needs at least two leaves");
    PredicateResult r;
    r.certified = probe.lambda().is_exact();
    if (is_path_graph(t)) {
        r.evidence.push_back({"path", true, nullptr});
        r.value = true;
        return r;
    }
    const VertexSet x = major_sets(t).X;
    for (const VertexSet& c : components_without(t, x)) r.evidence.push_back(membership_check(probe, c));
    r.evidence.push_back(independence_check(t, x, "major vertices pairwise non-adjacent"));
    r.value = all_hold(r.evidence);
    return r;
}

PredicateResult unicyclic_equality_predicate(const Graph& g, const ExactMatrix& b, const Eigenvalue& lambda) {
    require_pattern(g, b);
    return unicyclic_equality_predicate(MultiplicityProbe(b, lambda));
}

PredicateResult unicyclic_equality_predicate(const MultiplicityProbe& probe) {
    const Graph& g = probe.matrix().pattern();
    if (!is_connected(g) || cyclomatic_number(g) != 1) throw Error(ErrorKind::NotUnicyclic, "graph is not unicyclic");
    if (pendant_vertices(g).size() < 2) throw Error(ErrorKind::NotApplicable, "graph has fewer than two pendant paths");
    PredicateResult r;
    r.certified = probe.lambda().is_exact();

    std::vector<Vertex> cycle_majors;
    for (Vertex v : cycle_vertices(g)) {
        if (g.degree(v) >= 3) cycle_majors.push_back(v);
    }
    const bool one_major = cycle_majors.size() == 1 && g.degree(cycle_majors[0]) == 3;
    r.evidence.push_back({"one cycle major of degree 3", one_major, {{"cycle_majors", cycle_majors}}});

    const VertexSet m = major_sets(g).M;
    std::size_t cyclic = 0;
    std::size_t paths = 0;
    for (const VertexSet& c : components_without(g, m)) {
        const Graph piece = induced_subgraph(g, c).child;
        if (cyclomatic_number(piece) == 1) {
            ++cyclic;
            const std::size_t mult = probe.on(c);
            r.evidence.push_back({"C* in U with multiplicity 2", in_class_u(piece) && mult == 2,
                                  {{"vertices", set_json(c)}, {"in_U", in_class_u(piece)}, {"multiplicity", mult}}});
        } else {
            ++paths;
            SubCheck s = membership_check(probe, c);
            s.holds = s.holds && is_path_graph(piece);
            r.evidence.push_back(std::move(s));
        }
    }
    r.evidence.push_back({"G - M(G) has one cyclic part and at least one path", cyclic == 1 && paths >= 1,
                          {{"cyclic", cyclic}, {"paths", paths}}});
    r.evidence.push_back(independence_check(g, m, "M(G) pairwise non-adjacent"));
    r.value = all_hold(r.evidence);
    return r;
}

// ---- classification ---------------------------------------------------------------------

std::string to_string(Verdict v) {
    switch (v) {
    case Verdict::AttainsBound: return "AttainsBound";
    case Verdict::OneDeficientFormA: return "OneDeficientFormA";
    case Verdict::OneDeficientFormB: return "OneDeficientFormB";
    case Verdict::OneDeficientFormC: return "OneDeficientFormC";
    case Verdict::OneDeficientFormD: return "OneDeficientFormD";
    case Verdict::TwoPlusDeficient: return "TwoPlusDeficient";
    }
    return {};
}

bool is_one_deficient(Verdict v) {
    return v == Verdict::OneDeficientFormA || v == Verdict::OneDeficientFormB || v == Verdict::OneDeficientFormC ||
           v == Verdict::OneDeficientFormD;
}

std::string to_string(Deficiency d) {
    switch (d) {
    case Deficiency::ExceedsBound: return "ExceedsBound";
    case Deficiency::AttainsBound: return "AttainsBound";
    case Deficiency::OneDeficient: return "OneDeficient";
    case Deficiency::TwoPlusDeficient: return "TwoPlusDeficient";
    }
    return {};
}

Deficiency deficiency(std::size_t multiplicity, std::size_t theta, std::size_t p) {
    const std::size_t bound = 2 * theta + p;
    if (multiplicity > bound) return Deficiency::ExceedsBound;
    if (multiplicity == bound) return Deficiency::AttainsBound;
    if (multiplicity + 1 == bound) return Deficiency::OneDeficient;
    return Deficiency::TwoPlusDeficient;
}

bool ClassificationOutcome::agrees() const {
    switch (direct) {
    case Deficiency::ExceedsBound: return false;
    case Deficiency::AttainsBound: return verdict == Verdict::AttainsBound;
    case Deficiency::OneDeficient: return is_one_deficient(verdict);
    case Deficiency::TwoPlusDeficient: return verdict == Verdict::TwoPlusDeficient;
    }
    return false;
}

nlohmann::json to_json(const ClassificationOutcome& o) {
    return {{"verdict", to_string(o.verdict)},
            {"form", o.form},
            {"multiplicity", o.multiplicity},
            {"theta", o.theta},
            {"p", o.p},
            {"bound_minus_one", 2 * o.theta + o.p - 1},
            {"direct", to_string(o.direct)},
            {"agrees", o.agrees()},
            {"certified", o.certified},
            {"evidence", evidence_json(o.evidence)}};
}

namespace {

struct FormDParts {
    bool ok = false;
    Evidence evidence;
    std::vector<VertexSet> cstars;
    std::vector<VertexSet> paths;
};

FormDParts form_d_parts(const Graph& g) {
    FormDParts d;
    const std::size_t theta = cyclomatic_number(g);
    const MajorSets majors = major_sets(g);
    d.evidence.push_back({"M(G) nonempty", !majors.M.empty(), {{"M", set_json(majors.M)}}});
    d.evidence.push_back({"theta >= 1", theta >= 1, {{"theta", theta}}});

    // Every cycle lies inside one block; a block that is not a cycle holds a
    // cycle through two of its branch vertices.
    bool one_major_per_cycle = true;
    nlohmann::json per_block = nlohmann::json::array();
    for (const Block& blk : blocks(g)) {
        if (blk.vertices.size() < 3) continue;
        std::size_t count = 0;
        for (Vertex v : blk.vertices) count += g.degree(v) >= 3;
        const bool ok = blk.is_cycle_block && count == 1;
        one_major_per_cycle = one_major_per_cycle && ok;
        per_block.push_back({{"vertices", set_json(blk.vertices)}, {"cycle", blk.is_cycle_block}, {"majors", count}});
    }
    d.evidence.push_back({"one major vertex in each cycle", one_major_per_cycle, per_block});

    std::size_t bad = 0;
    for (const VertexSet& c : components_without(g, majors.M)) {
        const Graph piece = induced_subgraph(g, c).child;
        const std::size_t t = cyclomatic_number(piece);
        if (t == 0 && is_path_graph(piece)) {
            d.paths.push_back(c);
        } else if (t == 1 && in_class_u(piece)) {
            d.cstars.push_back(c);
        } else {
            ++bad;
        }
    }
    d.evidence.push_back({"G - M(G) is theta(G) class-U parts and paths", bad == 0 && d.cstars.size() == theta,
                          {{"cstars", d.cstars.size()}, {"paths", d.paths.size()}, {"other", bad}}});
    d.evidence.push_back(independence_check(g, majors.M, "M(G) pairwise non-adjacent"));
    d.ok = all_hold(d.evidence);
    return d;
}

} // namespace

bool form_d_structure(const Graph& g) { return form_d_parts(g).ok; }

ClassificationOutcome conclusion_classifier(const Graph& g, const ExactMatrix& b, const Eigenvalue& lambda) {
    require_pattern(g, b);
    return conclusion_classifier(MultiplicityProbe(b, lambda));
}

ClassificationOutcome conclusion_classifier(const MultiplicityProbe& probe) {
    const Graph& g = probe.matrix().pattern();
    require_connected_nontrivial(g);
    ClassificationOutcome o;
    o.multiplicity = probe.whole();
    if (o.multiplicity == 0) throw Error(ErrorKind::NotApplicable, "lambda is not an eigenvalue");
    o.theta = cyclomatic_number(g);
    o.p = pendant_vertices(g).size();
    o.direct = deficiency(o.multiplicity, o.theta, o.p);
    o.certified = probe.lambda().is_exact();
    const std::size_t m = o.multiplicity;

    if (o.theta == 0) {
        o.form = "a";
        if (is_path_graph(g)) {
            o.evidence.push_back({"path", true, nullptr});
            o.verdict = Verdict::OneDeficientFormA;
            return o;
        }
        auto tree = tree_equality_predicate(probe);
        o.evidence = std::move(tree.evidence);
        o.verdict = tree.value ? Verdict::OneDeficientFormA : Verdict::TwoPlusDeficient;
        return o;
    }

    if (in_class_u(g)) {
        o.form = "b";
        const bool cycle = is_cycle_graph(g);
        o.evidence.push_back({"cycle", cycle, {{"multiplicity", m}}});
        if (cycle && m == 2) {
            o.verdict = Verdict::AttainsBound;
        } else if ((cycle && m == 1) || (!cycle && m == 2)) {
            o.verdict = Verdict::OneDeficientFormB;
        } else {
            o.verdict = Verdict::TwoPlusDeficient;
        }
        return o;
    }

    if (is_theta_or_infinity(g)) {
        o.form = "c";
        const bool theta_graph = classify_family(g).family == Family::ThetaGraph;
        o.evidence.push_back({"m(G) - 1 = 2", m == 3, {{"multiplicity", m}}});
        for (Vertex y = 0; y < g.order(); ++y) {
            if (g.degree(y) != 2) continue;
            const auto nb = g.neighbors(y);
            if (std::none_of(nb.begin(), nb.end(), [&](Vertex z) { return g.degree(z) >= 3; })) continue;
            const std::size_t my = probe.without(VertexSet{y});
            o.evidence.push_back({"m(G - y) = 2", my == 2, {{"y", y}, {"multiplicity", my}}});
        }
        if (theta_graph) {
            for (Vertex x : major_sets(g).X) {
                const std::size_t mx = probe.without(VertexSet{x});
                o.evidence.push_back({"m(G - x) = 2", mx == 2, {{"x", x}, {"multiplicity", mx}}});
            }
        }
        o.verdict = all_hold(o.evidence) ? Verdict::OneDeficientFormC : Verdict::TwoPlusDeficient;
        return o;
    }

    FormDParts d = form_d_parts(g);
    o.evidence = std::move(d.evidence);
    if (!d.ok) {
        o.form = "none";
        o.verdict = Verdict::TwoPlusDeficient;
        return o;
    }
    o.form = "d";
    for (const VertexSet& c : d.paths) o.evidence.push_back(membership_check(probe, c));
    for (const VertexSet& c : d.cstars) {
        const std::size_t mc = probe.on(c);
        o.evidence.push_back({"m(C*) = 2", mc == 2, {{"vertices", set_json(c)}, {"multiplicity", mc}}});
    }
    o.verdict = all_hold(o.evidence) ? Verdict::OneDeficientFormD : Verdict::TwoPlusDeficient;
    return o;
}

// ---- C* shapes ------------------------------------------------------------------------

PredicateResult cstar_matrix_predicate(const ExactMatrix& b, const Eigenvalue& lambda) {
    const CStarParts parts = cstar_parts(b.pattern());
    PredicateResult r;
    r.certified = lambda.is_exact();
    if (parts.pstar.empty()) {
        r.evidence.push_back({"lambda in spectrum of P*", false, {{"pstar", "empty"}}});
    } else {
        const auto path = principal_submatrix(b, VertexSet(parts.pstar)).matrix;
        const bool member = path_spectrum_membership(path, lambda);
        r.evidence.push_back({"lambda in spectrum of P*", member, {{"pstar", parts.pstar}}});
    }
    const std::size_t mc = multiplicity(principal_submatrix(b, parts.cycle).matrix, lambda).multiplicity;
    r.evidence.push_back({"m(C_m) = 2", mc == 2, {{"cycle", set_json(parts.cycle)}, {"multiplicity", mc}}});
    r.value = all_hold(r.evidence);
    return r;
}

PredicateResult cstar_adjacency_predicate(const Graph& cstar, const Eigenvalue& lambda) {
    return cstar_matrix_predicate(adjacency_exact(cstar), lambda);
}

ExactMatrix fixture_h1() {
    const auto m = parse_matrix("4\n"
                                "-10 -10 -10 8\n"
                                "-10 -3 -5 0\n"
                                "-10 -5 -3 0\n"
                                "8 0 0 10\n");
    return ExactMatrix(m, support_graph(m));
}

ExactMatrix fixture_h2() {
    const auto m = parse_matrix("6\n"
                                "0 1 1 8 0 0\n"
                                "1 0 9 0 0 0\n"
                                "1 9 0 0 0 0\n"
                                "8 0 0 0 4 0\n"
                                "0 0 0 4 0 1\n"
                                "0 0 0 0 1 0\n");
    return ExactMatrix(m, support_graph(m));
}

ExactMatrix fixture_modified_c4() {
    const Graph c4 = families::cycle(4);
    DenseMatrix<GaussianRational> m = adjacency_exact(c4).entries();
    m(0, 1) = GaussianRational(2);
    m(1, 0) = GaussianRational(2);
    return ExactMatrix(std::move(m), c4);
}

CheckReport remark_counterexample_check() {
    struct Item {
        const char* name;
        ExactMatrix b;
        long lambda;
        VertexSet keep;
        std::size_t expected;
    };
    const ExactMatrix h1 = fixture_h1();
    const ExactMatrix h2 = fixture_h2();
    const std::vector<Item> items{{"m(H1, 2)", h1, 2, VertexSet::range(4), 2},
                                  {"m(H1[{v1,v2,v3}], 2)", h1, 2, VertexSet{0, 1, 2}, 1},
                                  {"m(H2, -9)", h2, -9, VertexSet::range(6), 2},
                                  {"m(H2[{v1,v2,v3}], -9)", h2, -9, VertexSet{0, 1, 2}, 1},
                                  {"m(H2[{v5,v6}], -9)", h2, -9, VertexSet{4, 5}, 0}};
    CheckReport r;
    r.name = "fixture_multiplicities";
    r.lhs = nlohmann::json::array();
    r.rhs = nlohmann::json::array();
    for (const Item& it : items) {
        const auto sub = principal_submatrix(it.b, it.keep).matrix;
        const std::size_t m = multiplicity_exact_rational(sub, it.lambda).multiplicity;
        r.lhs.push_back(m);
        r.rhs.push_back(it.expected);
        r.evidence.push_back({it.name, m == it.expected, {{"observed", m}, {"expected", it.expected}}});
    }
    r.instance = {{"H1", serialize_matrix(h1)}, {"H2", serialize_matrix(h2)}};
    r.holds = all_hold(r.evidence);
    return r;
}

// ---- corollaries ------------------------------------------------------------------------

bool corollary_nullity_tree(const Graph& t) {
    if (!is_tree(t)) throw Error(ErrorKind::NotATree, "graph is not a tree");
    if (pendant_vertices(t).size() < 3) throw Error(ErrorKind::NotApplicable, "tree needs at least three leaves");
    const VertexSet x = major_sets(t).X;
    for (Vertex v : pendant_vertices(t)) {
        const auto d = distances_from(t, v);
        std::size_t best = std::numeric_limits<std::size_t>::max();
        for (Vertex u : x) best = std::min(best, d[u]);
        if (best % 2 == 0) return false;
    }
    for (Vertex u : x) {
        const auto d = distances_from(t, u);
        for (Vertex w : x) {
            if (d[w] % 2 != 0) return false;
        }
    }
    return true;
}

bool corollary_minus_one_tree(const Graph& t) {
    if (!is_tree(t)) throw Error(ErrorKind::NotATree, "graph is not a tree");
    if (t.order() < 2) throw Error(ErrorKind::NotApplicable, "tree needs at least two vertices");
    if (is_path_graph(t)) return t.order() % 3 == 2;
    const VertexSet x = major_sets(t).X;
    for (Vertex v : pendant_vertices(t)) {
        const auto d = distances_from(t, v);
        for (Vertex u : x) {
            if (d[u] % 3 != 2) return false;
        }
    }
    return true;
}

// ---- relations ------------------------------------------------------------------------

std::string to_string(Relation r) {
    switch (r) {
    case Relation::InterlaceVertex: return "interlace-v";
    case Relation::InterlaceEdge: return "interlace-e";
    case Relation::GuvH: return "guvh";
    case Relation::PathRemoval: return "path-removal";
    case Relation::PendantCycle: return "pendant-cycle";
    case Relation::ThetaInfinity: return "theta-infty";
    case Relation::GainCycle: return "gain-cycle";
    }
    return {};
}

Relation parse_relation(std::string_view name) {
    for (Relation r : {Relation::InterlaceVertex, Relation::InterlaceEdge, Relation::GuvH, Relation::PathRemoval,
                       Relation::PendantCycle, Relation::ThetaInfinity, Relation::GainCycle}) {
        if (to_string(r) == name) return r;
    }
    throw Error(ErrorKind::Parse, "unknown relation '" + std::string(name) + "'");
}

namespace {

[[noreturn]] void unmet(const std::string& why) { throw Error(ErrorKind::SideConditionUnmet, why); }

Vertex need_vertex(const std::optional<Vertex>& v, std::size_t n, const char* what) {
    if (!v) unmet(std::string("missing witness ") + what);
    if (*v >= n) throw Error(ErrorKind::IndexOutOfRange, std::string("witness ") + what + " out of range");
    return *v;
}

bool adjacent_to_major(const Graph& g, Vertex y) {
    const auto nb = g.neighbors(y);
    return std::any_of(nb.begin(), nb.end(), [&](Vertex z) { return g.degree(z) >= 3; });
}

} // namespace

CheckReport lemma_relation_check(Relation rel, const MultiplicityProbe& probe, const RelationWitness& w) {
    const ExactMatrix& b = probe.matrix();
    const Graph& g = b.pattern();
    const std::size_t n = g.order();
    CheckReport r;
    r.name = to_string(rel);
    r.instance = instance_json(b, probe.lambda());
    auto mult = [&](const VertexSet& keep) { return probe.on(keep); };
    const VertexSet all = VertexSet::range(n);

    switch (rel) {
    case Relation::InterlaceVertex: {
        const Vertex v = need_vertex(w.vertex, n, "v");
        const std::size_t m = mult(all);
        if (m == 0) unmet("lambda is not an eigenvalue");
        const std::size_t mv = probe.without(VertexSet{v});
        r.lhs = {{"m(G)", m}};
        r.rhs = {{"m(G-v)", mv}};
        r.instance["witness"] = {{"v", v}};
        r.holds = m + 1 >= mv && m <= mv + 1;
        break;
    }
    case Relation::InterlaceEdge: {
        if (!w.edge || !g.has_edge(w.edge->u, w.edge->v)) unmet("witness e is not an edge");
        const std::size_t m = mult(all);
        if (m == 0) unmet("lambda is not an eigenvalue");
        const ExactMatrix be = delete_edge_entries(b, *w.edge);
        const std::size_t me = MultiplicityProbe(be, probe.lambda(), probe.tolerance()).whole();
        r.lhs = {{"m(G)", m}};
        r.rhs = {{"m(G-e)", me}};
        r.instance["witness"] = {{"e", {w.edge->u, w.edge->v}}};
        r.holds = m <= me + 2;
        break;
    }
    case Relation::GuvH: {
        const Vertex u = need_vertex(w.u, n, "u");
        const Vertex v = need_vertex(w.v, n, "v");
        const VertexSet& side = w.g_side;
        if (!side.contains(u) || side.contains(v)) unmet("u must lie in G and v in H");
        if (!g.has_edge(u, v)) unmet("uv is not an edge");
        for (Vertex a : side) {
            for (Vertex c : g.neighbors(a)) {
                if (!side.contains(c) && !(a == u && c == v)) unmet("uv is not the only edge between G and H");
            }
        }
        const std::size_t m_g = mult(side);
        const std::size_t m_gu = mult(side.minus(VertexSet{u}));
        r.evidence.push_back({"lambda in sigma(B(G))", m_g > 0, {{"multiplicity", m_g}}});
        r.evidence.push_back({"lambda not in sigma(B(G-u))", m_gu == 0, {{"multiplicity", m_gu}}});
        if (m_g == 0 || m_gu != 0) unmet("lambda must be an eigenvalue of B(G) and not of B(G-u)");
        const VertexSet h_minus_v = side.complement(n).minus(VertexSet{v});
        const std::size_t m = mult(all);
        const std::size_t mh = mult(h_minus_v);
        r.lhs = {{"m(GuvH)", m}};
        r.rhs = {{"m(H-v)", mh}};
        r.instance["witness"] = {{"g_side", set_json(side)}, {"u", u}, {"v", v}};
        r.holds = m == mh;
        break;
    }
    case Relation::PathRemoval: {
        if (w.path.empty()) unmet("missing witness path");
        const VertexSet on_cycles = cycle_vertices(g);
        const VertexSet pset(w.path);
        if (pset.size() != w.path.size()) unmet("path repeats a vertex");
        for (std::size_t i = 0; i < w.path.size(); ++i) {
            if (w.path[i] >= n) throw Error(ErrorKind::IndexOutOfRange, "path vertex out of range");
            if (on_cycles.contains(w.path[i])) unmet("path meets a cycle");
            if (i > 0 && !g.has_edge(w.path[i - 1], w.path[i])) unmet("consecutive path vertices are not adjacent");
        }
        const std::size_t m = mult(all);
        const std::size_t mp = probe.without(pset);
        r.lhs = {{"m(G\\P)", mp}};
        r.rhs = {{"m(G)", m}};
        r.instance["witness"] = {{"path", w.path}};
        r.holds = mp + 1 >= m;
        break;
    }
    case Relation::PendantCycle: {
        const Vertex x = need_vertex(w.vertex, n, "x");
        if (!is_connected(g) || is_cycle_graph(g)) unmet("graph must be connected and not a cycle");
        const std::size_t theta = cyclomatic_number(g);
        const std::size_t p = pendant_vertices(g).size();
        const std::size_t m = mult(all);
        if (deficiency(m, theta, p) != Deficiency::OneDeficient) unmet("graph is not 1+-deficient");
        const VertexSet cyc = cycle_vertices(g);
        if (!cyc.contains(x) || g.degree(x) != 2) unmet("x must be a cycle vertex of degree 2");
        const auto nb = g.neighbors(x);
        if (std::none_of(nb.begin(), nb.end(), [&](Vertex z) { return cyc.contains(z) && g.degree(z) >= 3; })) {
            unmet("x must be adjacent to a major cycle vertex");
        }
        const std::size_t mx = probe.without(VertexSet{x});
        r.lhs = {{"m(G)", m}};
        r.rhs = {{"m(G-x)+1", mx + 1}};
        r.instance["witness"] = {{"x", x}};
        r.holds = m == mx + 1;
        break;
    }
    case Relation::ThetaInfinity: {
        const Vertex y = need_vertex(w.vertex, n, "y");
        if (!is_connected(g) || !is_theta_or_infinity(g)) unmet("graph must be a theta or infinity graph");
        const std::size_t m = mult(all);
        if (deficiency(m, cyclomatic_number(g), pendant_vertices(g).size()) != Deficiency::OneDeficient) {
            unmet("graph is not 1+-deficient");
        }
        const std::size_t my = probe.without(VertexSet{y});
        r.instance["witness"] = {{"vertex", y}};
        if (g.degree(y) == 2 && adjacent_to_major(g, y)) {
            r.lhs = {{"m(G-y)", my}, {"m(G)-1", m - 1}};
            r.rhs = 2;
            r.holds = my == 2 && m - 1 == 2;
        } else if (g.degree(y) >= 3 && classify_family(g).family == Family::ThetaGraph) {
            r.lhs = {{"m(G-x)", my}};
            r.rhs = 2;
            r.holds = my == 2;
        } else {
            unmet("vertex must be of degree 2 next to a major vertex, or a major vertex of a theta graph");
        }
        break;
    }
    case Relation::GainCycle: throw Error(ErrorKind::InvalidArgument, "the gain-cycle relation takes a gain graph");
    }
    return r;
}

std::vector<double> gain_cycle_double_values(std::size_t n, double alpha, ApproxComplex gain) {
    std::vector<double> out;
    const double pi = std::numbers::pi;
    const double nn = static_cast<double>(n);
    if (std::abs(gain - ApproxComplex(1, 0)) < 1e-9) {
        for (std::size_t j = 1; j + 1 <= (n + 1) / 2; ++j) {
            out.push_back(2 * alpha + 2 * (1 - alpha) * std::cos(2.0 * static_cast<double>(j) * pi / nn));
        }
    } else if (std::abs(gain + ApproxComplex(1, 0)) < 1e-9) {
        for (std::size_t j = 0; j < n / 2; ++j) {
            out.push_back(2 * alpha + 2 * (1 - alpha) * std::cos((2.0 * static_cast<double>(j) + 1) * pi / nn));
        }
    }
    return out;
}

CheckReport gain_cycle_check(const GainGraph& phi, double alpha, double lambda, double tol) {
    const CycleGain cg = cycle_gain(phi);
    const auto spectrum = eigenvalues_numeric(a_alpha_gain(phi, alpha));
    std::size_t mult = 0;
    for (double v : spectrum.values) mult += std::abs(v - lambda) <= tol;
    const auto doubles = gain_cycle_double_values(phi.base().order(), alpha, cg.value);
    const bool predicted =
        std::any_of(doubles.begin(), doubles.end(), [&](double d) { return std::abs(d - lambda) <= tol; });
    CheckReport r;
    r.name = "gain-cycle";
    r.lhs = mult;
    r.rhs = predicted ? 2 : 1;
    r.instance = {{"n", phi.base().order()},
                  {"alpha", alpha},
                  {"lambda", lambda},
                  {"rho", cg.rho()},
                  {"tolerance", tol}};
    r.evidence.push_back({"multiplicity <= 2", mult <= 2, {{"multiplicity", mult}}});
    r.evidence.push_back({"double exactly at the listed values", (mult == 2) == predicted, {{"predicted", predicted}}});
    r.holds = all_hold(r.evidence);
    return r;
}

} // namespace specmult
