#include "specmult/oracle.hpp"

#include "specmult/families.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <random>
#include <sstream>
#include <thread>
#include <unordered_map>

namespace specmult {

namespace {

std::string fmt_double(double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

template <class T>
std::string join(const std::vector<T>& xs, const char* sep = ",") {
    std::ostringstream out;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        if (i) out << sep;
        out << xs[i];
    }
    return out.str();
}

std::string quote(const std::string& s) { return "'" + s + "'"; }

ExactMatrix matrix_of(const AssertionInstance& a) { return a.matrix ? *a.matrix : adjacency_exact(a.graph); }

const Eigenvalue& need_lambda(const AssertionInstance& a) {
    if (!a.lambda) throw Error(ErrorKind::InvalidArgument, a.predicate + " needs an eigenvalue");
    return *a.lambda;
}

std::size_t adjacency_mult(const Graph& g, long lambda) {
    return multiplicity_exact_rational(adjacency_exact(g), mpq_class(lambda)).multiplicity;
}

AssertionOutcome outcome(bool holds, nlohmann::json expected, nlohmann::json observed) {
    AssertionOutcome o;
    o.holds = holds;
    o.expected = std::move(expected);
    o.observed = std::move(observed);
    return o;
}

AssertionOutcome not_applicable() {
    AssertionOutcome o;
    o.applicable = false;
    return o;
}

AssertionOutcome evaluate_modified_c4() {
    const ExactMatrix c4 = fixture_modified_c4();
    const auto spectrum = certify_spectrum(c4);
    std::size_t max_rational = 0;
    for (const auto& ev : spectrum.eigenvalues) {
        if (ev.lambda.kind() == Eigenvalue::Kind::Rational) max_rational = std::max(max_rational, ev.multiplicity);
    }
    for (long x = -6; x <= 6; ++x) {
        max_rational = std::max(max_rational, multiplicity_exact_rational(c4, mpq_class(x)).multiplicity);
    }
    const auto numeric = eigenvalues_numeric(to_approx(c4));
    const std::size_t clusters = cluster_values(numeric.values, 1e-6).size();
    return outcome(max_rational <= 1 && clusters == 4, {{"max_rational_multiplicity", 1}, {"simple_eigenvalues", 4}},
                   {{"max_rational_multiplicity", max_rational}, {"simple_eigenvalues", clusters}});
}

} // namespace

// ---- assertions -------------------------------------------------------------------

std::vector<std::size_t> adjacency_multiplicity_profile(const Graph& g) {
    thread_local std::unordered_map<std::string, std::vector<std::size_t>> cache;
    const IntPolynomial cp = char_poly_integral(adjacency_exact(g));
    std::string key;
    for (const auto& c : cp.coefficients()) {
        key += c.get_str();
        key += ',';
    }
    if (auto it = cache.find(key); it != cache.end()) return it->second;
    std::vector<std::size_t> profile;
    for (const auto& [factor, mult] : squarefree_decomposition(to_rational(cp))) {
        // Each real root of the factor is an eigenvalue of exactly this multiplicity.
        for (std::size_t k = 0; k < static_cast<std::size_t>(factor.degree()); ++k) profile.push_back(mult);
    }
    std::sort(profile.begin(), profile.end());
    if (cache.size() < 200000) cache.emplace(key, profile);
    return profile;
}

AssertionOutcome evaluate_assertion(const AssertionInstance& a) {
    const std::string& p = a.predicate;
    const Graph& g = a.graph;

    if (p == "upper-bound") {
        const auto r = check_upper_bound(MultiplicityProbe(matrix_of(a), need_lambda(a)));
        return outcome(r.holds, {{"bound", r.rhs}}, {{"multiplicity", r.lhs}, {"cycle", is_cycle_graph(g)}});
    }
    if (p == "bound-profile") {
        if (!is_connected(g) || g.order() < 2) throw Error(ErrorKind::NotApplicable, "needs a connected graph, n >= 2");
        const std::size_t bound = 2 * cyclomatic_number(g) + pendant_vertices(g).size();
        const bool cycle = is_cycle_graph(g);
        const auto profile = adjacency_multiplicity_profile(g);
        bool holds = true;
        for (std::size_t m : profile) {
            if (m > bound || (m == bound && !(cycle && m == 2))) holds = false;
        }
        return outcome(holds, {{"bound", bound}}, {{"multiplicities", profile}, {"cycle", cycle}});
    }
    if (p == "tree-equality") {
        const MultiplicityProbe probe(matrix_of(a), need_lambda(a));
        const bool pred = tree_equality_predicate(probe).value;
        const std::size_t m = probe.whole();
        const std::size_t target = pendant_vertices(g).size() - 1;
        return outcome(m <= target && pred == (m == target), {{"predicate", pred}},
                       {{"multiplicity", m}, {"p_minus_1", target}});
    }
    if (p == "classifier") {
        const auto o = conclusion_classifier(MultiplicityProbe(matrix_of(a), need_lambda(a)));
        return outcome(o.agrees(),
                       {{"verdict", to_string(o.verdict)}, {"form", o.form}, {"one_deficient", is_one_deficient(o.verdict)}},
                       {{"multiplicity", o.multiplicity},
                        {"bound_minus_one", 2 * o.theta + o.p - 1},
                        {"direct", to_string(o.direct)},
                        {"one_deficient", o.direct == Deficiency::OneDeficient}});
    }
    if (p == "cstar" || p == "cstar-counterexample") {
        const Eigenvalue& lambda = need_lambda(a);
        const ExactMatrix b = matrix_of(a);
        const bool pred = a.matrix ? cstar_matrix_predicate(b, lambda).value : cstar_adjacency_predicate(g, lambda).value;
        const std::size_t m = multiplicity(b, lambda).multiplicity;
        const bool biconditional = pred == (m == 2);
        return outcome(p == "cstar" ? biconditional : !biconditional, {{"predicate", pred}}, {{"multiplicity", m}});
    }
    if (p == "nullity-corollary" || p == "minus-one-corollary") {
        const bool nullity = p == "nullity-corollary";
        const bool c = nullity ? corollary_nullity_tree(g) : corollary_minus_one_tree(g);
        const std::size_t m = adjacency_mult(g, nullity ? 0 : -1);
        const std::size_t target = pendant_vertices(g).size() - 1;
        return outcome(c == (m == target), {{"corollary", c}}, {{"multiplicity", m}, {"p_minus_1", target}});
    }
    if (p == "cycle-equality") {
        if (!is_cycle_graph(g)) throw Error(ErrorKind::NotACycle, "cycle-equality needs a cycle");
        const Eigenvalue& lambda = need_lambda(a);
        const IntPolynomial cp = char_poly_integral(adjacency_exact(g));
        const std::size_t m = lambda.is_minimal() && lambda.kind() == Eigenvalue::Kind::Algebraic
                                  ? multiplicity_via_minpoly(cp, to_integer(lambda.defining_polynomial()))
                                  : lambda.multiplicity_in(to_rational(cp));
        return outcome(m == 2, {{"multiplicity", 2}}, {{"multiplicity", m}});
    }
    if (p == "remark-values") {
        const auto r = remark_counterexample_check();
        return outcome(r.holds, r.rhs, r.lhs);
    }
    if (p == "modified-c4") return evaluate_modified_c4();

    const Relation rel = parse_relation(p);
    if (rel == Relation::GainCycle) {
        std::vector<ApproxComplex> gains;
        for (double x : a.gains) gains.emplace_back(x, 0.0);
        if (gains.empty()) gains.assign(g.size(), ApproxComplex(1, 0));
        const auto r = gain_cycle_check(GainGraph(g, gains), a.alpha, a.lambda_float);
        return outcome(r.holds, {{"multiplicity", r.rhs}}, {{"multiplicity", r.lhs}});
    }
    try {
        const auto r = lemma_relation_check(rel, MultiplicityProbe(matrix_of(a), need_lambda(a)), a.witness);
        return outcome(r.holds, r.rhs, r.lhs);
    } catch (const Error& e) {
        if (e.kind() == ErrorKind::SideConditionUnmet) return not_applicable();
        throw;
    }
}

std::string inline_text(const std::string& text) {
    std::string out;
    for (char c : text) out += c == '\n' ? ';' : c;
    while (!out.empty() && out.back() == ';') out.pop_back();
    return out;
}

namespace {

nlohmann::json witness_json(const RelationWitness& w) {
    nlohmann::json j = nlohmann::json::object();
    if (w.vertex) j["vertex"] = *w.vertex;
    if (w.edge) j["edge"] = {w.edge->u, w.edge->v};
    if (!w.path.empty()) j["path"] = w.path;
    if (!w.g_side.empty()) j["g_side"] = w.g_side.ids();
    if (w.u) j["u"] = *w.u;
    if (w.v) j["v"] = *w.v;
    return j;
}

std::string lambda_flags(const Eigenvalue& e) {
    if (e.kind() == Eigenvalue::Kind::Rational) return " --lambda " + quote(e.rational_value().get_str());
    if (e.kind() == Eigenvalue::Kind::Numeric) return " --lambda-float " + fmt_double(e.approx());
    std::vector<std::string> coeffs;
    for (const auto& c : e.defining_polynomial().coefficients()) coeffs.push_back(c.get_str());
    const RootInterval iv = e.interval();
    std::string s = " --lambda-poly " + quote(join(coeffs)) + " --lambda-interval " +
                    quote(iv.lo.get_str() + "," + iv.hi.get_str());
    if (e.is_minimal()) s += " --lambda-minimal";
    return s;
}

} // namespace

nlohmann::json instance_to_json(const AssertionInstance& a) {
    nlohmann::json j{{"predicate", a.predicate}, {"graph", inline_text(serialize_graph(a.graph))}};
    j["matrix"] = a.matrix ? nlohmann::json(inline_text(serialize_matrix(*a.matrix))) : nlohmann::json("adjacency");
    if (a.lambda) j["lambda"] = to_json(*a.lambda);
    const auto w = witness_json(a.witness);
    if (!w.empty()) j["witness"] = w;
    if (a.predicate == "gain-cycle") {
        j["alpha"] = a.alpha;
        j["lambda_float"] = a.lambda_float;
        j["gains"] = a.gains;
    }
    return j;
}

std::string repro_command(const AssertionInstance& a) {
    std::string s = "specmult check --relation " + a.predicate;
    s += " --graph-inline " + quote(inline_text(serialize_graph(a.graph)));
    if (a.matrix) s += " --matrix-inline " + quote(inline_text(serialize_matrix(*a.matrix)));
    if (a.lambda) s += lambda_flags(*a.lambda);
    const RelationWitness& w = a.witness;
    if (w.vertex) s += " --vertex " + std::to_string(*w.vertex);
    if (w.edge) s += " --edge " + std::to_string(w.edge->u) + "," + std::to_string(w.edge->v);
    if (!w.path.empty()) s += " --path " + join(w.path);
    if (!w.g_side.empty()) s += " --g-side " + join(w.g_side.ids());
    if (w.u) s += " --u " + std::to_string(*w.u);
    if (w.v) s += " --v " + std::to_string(*w.v);
    if (a.predicate == "gain-cycle") {
        std::vector<std::string> gains;
        for (double x : a.gains) gains.push_back(fmt_double(x));
        s += " --alpha " + fmt_double(a.alpha) + " --lambda-float " + fmt_double(a.lambda_float);
        if (!gains.empty()) s += " --gains " + quote(join(gains));
    }
    return s + " --json";
}

// ---- campaigns ----------------------------------------------------------------------

std::string to_string(Campaign c) {
    switch (c) {
    case Campaign::Fixtures: return "fixtures";
    case Campaign::Cycles: return "cycles";
    case Campaign::Trees: return "trees";
    case Campaign::Unicyclic: return "unicyclic";
    case Campaign::Connected: return "connected";
    case Campaign::CStar: return "cstar";
    case Campaign::ThetaInfinity: return "theta-infinity";
    case Campaign::GainCycles: return "gain-cycles";
    case Campaign::Random: return "random";
    case Campaign::Corollaries: return "corollaries";
    }
    return {};
}

std::vector<Campaign> all_campaigns() {
    return {Campaign::Fixtures,      Campaign::Cycles,     Campaign::Trees,  Campaign::Unicyclic,
            Campaign::Connected,     Campaign::CStar,      Campaign::ThetaInfinity,
            Campaign::GainCycles,    Campaign::Random,     Campaign::Corollaries};
}

Campaign parse_campaign(std::string_view name) {
    for (Campaign c : all_campaigns()) {
        if (to_string(c) == name) return c;
    }
    throw Error(ErrorKind::Parse, "unknown campaign '" + std::string(name) + "'");
}

std::size_t default_cap(Campaign c, bool dedup) {
    switch (c) {
    case Campaign::Fixtures: return 0;
    case Campaign::Cycles: return 12;
    case Campaign::Trees: return dedup ? caps::unlabeled_trees : caps::labeled_trees;
    case Campaign::Unicyclic: return caps::unicyclic;
    case Campaign::Connected: return caps::connected;
    case Campaign::CStar: return caps::cstar;
    case Campaign::ThetaInfinity: return caps::theta_infinity_param;
    case Campaign::GainCycles: return caps::gain_cycle;
    case Campaign::Random: return 10;
    case Campaign::Corollaries: return caps::unlabeled_trees;
    }
    return 0;
}

nlohmann::json to_json(const Discrepancy& d) {
    return {{"campaign", d.campaign},
            {"predicate", d.predicate},
            {"instance", d.instance},
            {"expected", d.expected},
            {"observed", d.observed},
            {"repro", d.repro}};
}

nlohmann::json to_json(const CampaignSummary& s) {
    return {{"summary", true},
            {"campaign", s.campaign},
            {"cap", s.cap},
            {"dedup", s.dedup},
            {"instances", s.instances},
            {"checks", s.checks},
            {"checks_by_predicate", s.checks_by_predicate},
            {"discrepancies", s.discrepancies},
            {"uncertified", s.uncertified},
            {"partial", s.partial}};
}

std::string to_jsonl(const CampaignResult& r) {
    std::string out;
    for (const auto& d : r.discrepancies) out += to_json(d).dump() + "\n";
    out += to_json(r.summary).dump() + "\n";
    return out;
}

namespace {

struct ItemResult {
    std::size_t instances = 0;
    std::size_t checks = 0;
    std::map<std::string, std::size_t> by_predicate;
    std::size_t uncertified = 0;
    std::vector<Discrepancy> found;
};

class Recorder {
public:
    Recorder(std::string campaign, ItemResult& out) : campaign_(std::move(campaign)), out_(out) {}

    void check(const AssertionInstance& a) {
        AssertionOutcome o;
        try {
            o = evaluate_assertion(a);
        } catch (const Error& e) {
            o.holds = false;
            o.expected = "no error";
            o.observed = {{"error", std::string(to_string(e.kind()))}, {"message", e.what()}};
        }
        if (!o.applicable) return;
        ++out_.checks;
        ++out_.by_predicate[a.predicate];
        if (o.holds) return;
        out_.found.push_back(Discrepancy{campaign_, a.predicate, instance_to_json(a), o.expected, o.observed,
                                         repro_command(a)});
    }

    void instance() { ++out_.instances; }

    // Certified eigenvalues of b; the ones that could not be certified are
    // counted and skipped.
    std::vector<CertifiedEigenvalue> eigenvalues(const ExactMatrix& b) {
        const auto s = certify_spectrum(b);
        std::size_t covered = 0;
        for (const auto& ev : s.eigenvalues) covered += ev.multiplicity;
        out_.uncertified += b.dim() - std::min(covered, b.dim());
        return s.eigenvalues;
    }

private:
    std::string campaign_;
    ItemResult& out_;
};

AssertionInstance make(std::string predicate, const Graph& g, std::optional<Eigenvalue> lambda = std::nullopt,
                       std::optional<ExactMatrix> matrix = std::nullopt) {
    AssertionInstance a;
    a.predicate = std::move(predicate);
    a.graph = g;
    a.lambda = std::move(lambda);
    a.matrix = std::move(matrix);
    return a;
}

using Work = std::function<void(Recorder&)>;

// ---- per-campaign work lists -------------------------------------------------------

std::vector<Work> fixtures_work() {
    std::vector<Work> w;
    w.push_back([](Recorder& r) {
        r.instance();
        r.check(make("remark-values", Graph(1)));
        r.check(make("modified-c4", families::cycle(4)));
        r.check(make("cycle-equality", families::cycle(4), Eigenvalue::rational(0)));
        const ExactMatrix h1 = fixture_h1();
        const ExactMatrix h2 = fixture_h2();
        r.check(make("cstar-counterexample", h1.pattern(), Eigenvalue::rational(2), h1));
        r.check(make("cstar-counterexample", h2.pattern(), Eigenvalue::rational(-9), h2));
    });
    return w;
}

std::vector<Work> cycles_work(std::size_t cap) {
    std::vector<Work> w;
    for (std::size_t n = 3; n <= cap; ++n) {
        w.push_back([n](Recorder& r) {
            r.instance();
            const Graph c = families::cycle(n);
            for (unsigned k = 1; k + 1 <= (n + 1) / 2; ++k) {
                const double x = 2.0 * std::cos(2.0 * k * std::numbers::pi / static_cast<double>(n));
                const Eigenvalue lambda = Eigenvalue::algebraic(min_poly_2cos(static_cast<unsigned>(n), k), x);
                r.check(make("cycle-equality", c, lambda));
                r.check(make("upper-bound", c, lambda));
            }
        });
    }
    return w;
}

void per_eigenvalue(Recorder& r, const Graph& g, const std::vector<std::string>& predicates) {
    r.instance();
    for (const auto& ev : r.eigenvalues(adjacency_exact(g))) {
        for (const auto& p : predicates) r.check(make(p, g, ev.lambda));
    }
}

std::vector<Work> graph_list_work(const std::vector<Graph>& graphs, std::vector<std::string> predicates) {
    std::vector<Work> w;
    for (const Graph& g : graphs) {
        w.push_back([g, predicates](Recorder& r) { per_eigenvalue(r, g, predicates); });
    }
    return w;
}

// Labeled graphs: only the exact bound profile, in chunks of edge masks.
std::vector<Work> labeled_work(bool trees, std::size_t cap) {
    std::vector<Work> w;
    if (trees) {
        for (std::size_t n = 2; n <= cap; ++n) {
            w.push_back([n](Recorder& r) {
                for_each_labeled_tree(n, [&](const Graph& t) {
                    r.instance();
                    r.check(make("bound-profile", t));
                    return true;
                });
            });
        }
        return w;
    }
    constexpr std::uint64_t chunk = 1 << 14;
    for (std::size_t n = 2; n <= cap; ++n) {
        const std::uint64_t total = edge_subset_count(n);
        for (std::uint64_t start = 0; start < total; start += chunk) {
            const std::uint64_t end = std::min(total, start + chunk);
            w.push_back([n, start, end](Recorder& r) {
                for (std::uint64_t mask = start; mask < end; ++mask) {
                    if (auto g = connected_from_mask(n, mask)) {
                        r.instance();
                        r.check(make("bound-profile", *g));
                    }
                }
            });
        }
    }
    return w;
}

std::vector<Work> unicyclic_work(std::size_t cap) {
    std::vector<Work> w;
    for (std::size_t n = 3; n <= cap; ++n) {
        for (const Graph& g : enumerate_unicyclic(n)) {
            w.push_back([g](Recorder& r) {
                r.instance();
                const std::size_t bound = 2 + pendant_vertices(g).size();
                const bool cycle = is_cycle_graph(g);
                for (const auto& ev : r.eigenvalues(adjacency_exact(g))) {
                    r.check(make("upper-bound", g, ev.lambda));
                    r.check(make("classifier", g, ev.lambda));
                    if (cycle || ev.multiplicity + 1 != bound) continue;
                    for (Vertex x = 0; x < g.order(); ++x) {
                        AssertionInstance a = make("pendant-cycle", g, ev.lambda);
                        a.witness.vertex = x;
                        r.check(a);
                    }
                }
            });
        }
    }
    return w;
}

std::vector<Work> theta_infinity_work(std::size_t cap) {
    std::vector<Work> w;
    for (const auto& s : theta_infinity_graphs(cap)) {
        const Graph g = s.graph;
        w.push_back([g](Recorder& r) {
            r.instance();
            const std::size_t bound = 4 + pendant_vertices(g).size();
            for (const auto& ev : r.eigenvalues(adjacency_exact(g))) {
                r.check(make("upper-bound", g, ev.lambda));
                r.check(make("classifier", g, ev.lambda));
                if (ev.multiplicity + 1 != bound) continue;
                for (Vertex y = 0; y < g.order(); ++y) {
                    AssertionInstance a = make("theta-infty", g, ev.lambda);
                    a.witness.vertex = y;
                    r.check(a);
                }
            }
        });
    }
    return w;
}

std::vector<Work> cstar_work(std::size_t cap) {
    std::vector<Work> w;
    for (const auto& s : cstar_shapes(cap)) {
        const Graph g = s.graph;
        w.push_back([g](Recorder& r) { per_eigenvalue(r, g, {"cstar"}); });
    }
    return w;
}

std::vector<Work> gain_work(std::size_t cap) {
    std::vector<Work> w;
    for (std::size_t n = 3; n <= cap; ++n) {
        for (double alpha : {0.0, 0.25, 0.5, 0.75}) {
            for (double sign : {1.0, -1.0}) {
                w.push_back([n, alpha, sign](Recorder& r) {
                    r.instance();
                    const Graph c = families::cycle(n);
                    std::vector<double> gains(c.size(), 1.0);
                    gains[0] = sign;
                    std::vector<ApproxComplex> cg;
                    for (double x : gains) cg.emplace_back(x, 0.0);
                    const GainGraph phi(c, cg);
                    std::vector<double> lambdas;
                    const auto spectrum = eigenvalues_numeric(a_alpha_gain(phi, alpha));
                    for (const auto& cl : cluster_values(spectrum.values, 1e-8)) lambdas.push_back(cl.center);
                    for (double d : gain_cycle_double_values(n, alpha, ApproxComplex(sign, 0))) lambdas.push_back(d);
                    for (double lambda : lambdas) {
                        AssertionInstance a = make("gain-cycle", c);
                        a.alpha = alpha;
                        a.lambda_float = lambda;
                        a.gains = gains;
                        r.check(a);
                    }
                });
            }
        }
    }
    return w;
}

std::vector<Work> corollaries_work(std::size_t cap) {
    std::vector<Work> w;
    for (std::size_t n = 2; n <= cap; ++n) {
        for (const Graph& t : unlabeled_trees(n)) {
            w.push_back([t](Recorder& r) {
                r.instance();
                if (pendant_vertices(t).size() >= 3) r.check(make("nullity-corollary", t));
                r.check(make("minus-one-corollary", t));
            });
        }
    }
    return w;
}

// ---- random Hermitian campaign ----------------------------------------------------

std::uint64_t mix(std::uint64_t a, std::uint64_t b) {
    std::uint64_t x = a * 0x9E3779B97F4A7C15ULL + b + 0x632BE59BD9B4E019ULL;
    x ^= x >> 31;
    x *= 0xBF58476D1CE4E5B9ULL;
    x ^= x >> 29;
    return x;
}

// Random labeled tree plus a few extra edges. Uses raw engine output only, so
// the sample does not depend on the standard library's distributions.
Graph random_connected(std::mt19937_64& rng, std::size_t lo, std::size_t hi, std::size_t max_extra) {
    const std::size_t n = lo + rng() % (hi - lo + 1);
    if (n == 1) return Graph(1);
    std::vector<Edge> edges;
    if (n == 2) {
        edges.push_back(Edge{0, 1});
    } else {
        std::vector<Vertex> seq(n - 2);
        for (auto& v : seq) v = static_cast<Vertex>(rng() % n);
        const Graph t = tree_from_pruefer(seq);
        edges.assign(t.edges().begin(), t.edges().end());
    }
    const std::size_t extra = rng() % (max_extra + 1);
    for (std::size_t k = 0, tries = 0; k < extra && tries < 50; ++tries) {
        Vertex a = static_cast<Vertex>(rng() % n), b = static_cast<Vertex>(rng() % n);
        if (a == b) continue;
        if (a > b) std::swap(a, b);
        if (std::find(edges.begin(), edges.end(), Edge{a, b}) != edges.end()) continue;
        edges.push_back(Edge{a, b});
        ++k;
    }
    return Graph(n, edges);
}

mpq_class random_rational(std::mt19937_64& rng) {
    mpq_class q(static_cast<long>(rng() % 11) - 5, static_cast<long>(1 + rng() % 3));
    q.canonicalize();
    return q;
}

// A path of up to three vertices that avoids every cycle, or empty.
std::vector<Vertex> random_free_path(std::mt19937_64& rng, const Graph& g) {
    const VertexSet on_cycles = cycle_vertices(g);
    std::vector<Vertex> free;
    for (Vertex v = 0; v < g.order(); ++v) {
        if (!on_cycles.contains(v)) free.push_back(v);
    }
    if (free.empty()) return {};
    std::vector<Vertex> path{free[rng() % free.size()]};
    const std::size_t len = 1 + rng() % 3;
    while (path.size() < len) {
        std::vector<Vertex> next;
        for (Vertex w : g.neighbors(path.back())) {
            if (!on_cycles.contains(w) && std::find(path.begin(), path.end(), w) == path.end()) next.push_back(w);
        }
        if (next.empty()) break;
        path.push_back(next[rng() % next.size()]);
    }
    return path;
}

void random_matrix_checks(Recorder& r, const Graph& g, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    const ExactMatrix base = random_in_S(g, seed);
    const mpq_class planted_value = random_rational(rng);
    const Vertex at = static_cast<Vertex>(rng() % g.order());
    const ExactMatrix b = plant_eigenvalue(base, planted_value, at);
    const Eigenvalue planted = Eigenvalue::rational(planted_value);
    r.instance();

    r.check(make("upper-bound", g, planted, b));
    for (long x = -2; x <= 2; ++x) r.check(make("upper-bound", g, Eigenvalue::rational(x), b));

    const auto evs = r.eigenvalues(b);
    for (const auto& ev : evs) r.check(make("upper-bound", g, ev.lambda, b));

    std::vector<Eigenvalue> probes{planted};
    if (!evs.empty()) probes.push_back(evs[rng() % evs.size()].lambda);
    for (const Eigenvalue& lambda : probes) {
        AssertionInstance v = make("interlace-v", g, lambda, b);
        v.witness.vertex = static_cast<Vertex>(rng() % g.order());
        r.check(v);
        if (g.size() > 0) {
            AssertionInstance e = make("interlace-e", g, lambda, b);
            e.witness.edge = g.edges()[rng() % g.size()];
            r.check(e);
        }
        const auto path = random_free_path(rng, g);
        if (!path.empty()) {
            AssertionInstance pr = make("path-removal", g, lambda, b);
            pr.witness.path = path;
            r.check(pr);
        }
    }
}

// Builds GuvH with lambda planted on the G side so that lambda is an
// eigenvalue of B(G) and not of B(G - u); retries with a new lambda otherwise.
void guvh_instance(Recorder& r, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    const Graph gg = random_connected(rng, 2, 5, 1);
    const Graph hh = random_connected(rng, 2, 5, 1);
    const Vertex u = static_cast<Vertex>(rng() % gg.order());
    const Vertex v = static_cast<Vertex>(rng() % hh.order());
    const Graph whole = families::join_by_edge(gg, u, hh, static_cast<Vertex>(v));
    const VertexSet g_side = VertexSet::range(gg.order());
    const Vertex v_whole = static_cast<Vertex>(gg.order() + v);
    const ExactMatrix b0 = random_in_S(whole, seed);
    r.instance();
    for (int attempt = 0; attempt < 32; ++attempt) {
        const mpq_class lambda = random_rational(rng);
        const auto sub = principal_submatrix(b0, g_side).matrix;
        const auto planted = plant_eigenvalue(sub, lambda, u);
        auto entries = b0.entries();
        entries(u, u) = planted.entries()(u, u);
        const ExactMatrix b(std::move(entries), whole);
        AssertionInstance a = make("guvh", whole, Eigenvalue::rational(lambda), b);
        a.witness.g_side = g_side;
        a.witness.u = u;
        a.witness.v = v_whole;
        // Side conditions first; only a valid instance counts.
        if (!evaluate_assertion(a).applicable) continue;
        r.check(a);
        return;
    }
}

std::vector<Work> random_work(const CampaignConfig& cfg, std::size_t cap) {
    std::vector<Work> w;
    for (std::size_t i = 0; i < cfg.graphs; ++i) {
        const std::uint64_t gseed = mix(cfg.seed, i);
        const std::size_t seeds = cfg.seeds;
        w.push_back([gseed, seeds, cap](Recorder& r) {
            std::mt19937_64 rng(gseed);
            const Graph g = random_connected(rng, 2, cap, 3);
            for (std::size_t s = 0; s < seeds; ++s) random_matrix_checks(r, g, mix(gseed, s + 1));
        });
    }
    for (std::size_t j = 0; j < cfg.guvh_instances; ++j) {
        const std::uint64_t seed = mix(cfg.seed ^ 0x5555, j);
        w.push_back([seed](Recorder& r) { guvh_instance(r, seed); });
    }
    return w;
}

std::vector<Graph> deduped_range(std::size_t lo, std::size_t cap, std::vector<Graph> (*gen)(std::size_t)) {
    std::vector<Graph> out;
    for (std::size_t n = lo; n <= cap; ++n) {
        auto gs = gen(n);
        out.insert(out.end(), gs.begin(), gs.end());
    }
    return out;
}

} // namespace

CampaignResult run_campaign(const CampaignConfig& cfg) {
    const std::size_t cap = cfg.cap ? cfg.cap : default_cap(cfg.campaign, cfg.dedup);
    std::vector<Work> work;
    switch (cfg.campaign) {
    case Campaign::Fixtures: work = fixtures_work(); break;
    case Campaign::Cycles:
        if (cap > 40) throw Error(ErrorKind::CapExceeded, "cycles: order above cap");
        work = cycles_work(cap);
        break;
    case Campaign::Trees:
        if (cap > (cfg.dedup ? caps::unlabeled_trees : caps::labeled_trees)) {
            throw Error(ErrorKind::CapExceeded, "trees: order above cap");
        }
        work = cfg.dedup ? graph_list_work(deduped_range(2, cap, unlabeled_trees), {"upper-bound", "tree-equality"})
                         : labeled_work(true, cap);
        break;
    case Campaign::Unicyclic: work = unicyclic_work(cap); break;
    case Campaign::Connected:
        if (cap > caps::connected) throw Error(ErrorKind::CapExceeded, "connected: order above cap");
        work = cfg.dedup ? graph_list_work(deduped_range(2, cap, enumerate_connected), {"upper-bound", "classifier"})
                         : labeled_work(false, cap);
        break;
    case Campaign::CStar: work = cstar_work(cap); break;
    case Campaign::ThetaInfinity: work = theta_infinity_work(cap); break;
    case Campaign::GainCycles:
        if (cap > caps::gain_cycle) throw Error(ErrorKind::CapExceeded, "gain cycles: order above cap");
        work = gain_work(cap);
        break;
    case Campaign::Random:
        if (cap > 10 || cap < 2) throw Error(ErrorKind::CapExceeded, "random: order must lie in [2, 10]");
        work = random_work(cfg, cap);
        break;
    case Campaign::Corollaries: work = corollaries_work(cap); break;
    }

    const std::string name = to_string(cfg.campaign);
    std::vector<ItemResult> results(work.size());
    std::atomic<std::size_t> next{0};
    std::atomic<bool> out_of_time{false};
    const auto start = std::chrono::steady_clock::now();
    auto expired = [&] {
        if (cfg.time_budget <= 0) return false;
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count() > cfg.time_budget;
    };
    auto worker = [&] {
        for (;;) {
            const std::size_t i = next.fetch_add(1);
            if (i >= work.size()) return;
            if (expired()) {
                out_of_time = true;
                continue;
            }
            Recorder rec(name, results[i]);
            work[i](rec);
        }
    };
    const std::size_t jobs = std::max<std::size_t>(1, std::min(cfg.jobs, work.size()));
    if (jobs == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (std::size_t t = 0; t < jobs; ++t) pool.emplace_back(worker);
        for (auto& t : pool) t.join();
    }

    CampaignResult out;
    out.summary.campaign = name;
    out.summary.cap = cap;
    out.summary.dedup = cfg.dedup;
    out.summary.partial = out_of_time;
    for (auto& item : results) {
        out.summary.instances += item.instances;
        out.summary.checks += item.checks;
        for (const auto& [name, count] : item.by_predicate) out.summary.checks_by_predicate[name] += count;
        out.summary.uncertified += item.uncertified;
        for (auto& d : item.found) out.discrepancies.push_back(std::move(d));
    }
    out.summary.discrepancies = out.discrepancies.size();
    return out;
}

} // namespace specmult
