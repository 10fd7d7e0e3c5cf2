#include "specmult/oracle.hpp"

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

using namespace specmult;
using nlohmann::json;

namespace {

constexpr int exit_ok = 0;
constexpr int exit_domain = 1;
constexpr int exit_usage = 2;
constexpr int exit_discrepancy = 3;

struct Inputs {
    std::string graph_file;
    std::string graph_inline;
    std::string matrix_file;
    std::string matrix_inline;
    bool adjacency = false;

    std::string lambda;
    std::string lambda_minpoly;
    double lambda_near = 0.0;
    std::string lambda_poly;
    std::string lambda_interval;
    bool lambda_minimal = false;
    std::optional<double> lambda_float;
    bool numeric = false;
};

struct Output {
    bool json = false;
};

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorKind::InvalidArgument, "cannot read " + path);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

std::string from_inline(std::string text) {
    for (char& c : text) {
        if (c == ';') c = '\n';
    }
    return text;
}

void add_graph_options(CLI::App* cmd, Inputs& in) {
    auto* g = cmd->add_option("--graph", in.graph_file, "Graph file (edge list: 'n m' then 'u v' lines)");
    auto* gi = cmd->add_option("--graph-inline", in.graph_inline, "Graph text with ';' for newlines");
    g->excludes(gi);
}

void add_matrix_options(CLI::App* cmd, Inputs& in) {
    auto* m = cmd->add_option("--matrix", in.matrix_file, "Matrix file (n, then n rows)");
    auto* mi = cmd->add_option("--matrix-inline", in.matrix_inline, "Matrix text with ';' for newlines");
    auto* a = cmd->add_flag("--adjacency", in.adjacency, "Use the adjacency matrix (default without --matrix)");
    m->excludes(mi);
    a->excludes(m);
    a->excludes(mi);
}

void add_lambda_options(CLI::App* cmd, Inputs& in) {
    cmd->add_option("--lambda", in.lambda, "Rational eigenvalue: integer, p/q or exact decimal");
    cmd->add_option("--lambda-minpoly", in.lambda_minpoly, "Minimal polynomial coefficients, lowest degree first");
    cmd->add_option("--lambda-near", in.lambda_near, "Selects the root of --lambda-minpoly nearest to this value");
    cmd->add_option("--lambda-poly", in.lambda_poly, "Squarefree polynomial coefficients, lowest degree first");
    cmd->add_option("--lambda-interval", in.lambda_interval, "Isolating interval 'lo,hi' for --lambda-poly");
    cmd->add_flag("--lambda-minimal", in.lambda_minimal, "--lambda-poly is irreducible");
    cmd->add_option("--lambda-float", in.lambda_float, "Floating eigenvalue (uncertified)");
    cmd->add_flag("--numeric", in.numeric, "Allow floating eigenvalues in predicates");
}

Graph load_graph(const Inputs& in, bool required) {
    if (!in.graph_file.empty()) return parse_graph(read_file(in.graph_file));
    if (!in.graph_inline.empty()) return parse_graph(from_inline(in.graph_inline));
    if (required) throw CLI::ValidationError("--graph", "a graph is required");
    return Graph();
}

// Matrix from --matrix/--matrix-inline, else the adjacency matrix of the graph.
ExactMatrix load_matrix(const Inputs& in, const Graph& g, bool have_graph) {
    std::string text;
    if (!in.matrix_file.empty()) text = read_file(in.matrix_file);
    if (!in.matrix_inline.empty()) text = from_inline(in.matrix_inline);
    if (text.empty()) {
        if (!have_graph) throw CLI::ValidationError("--graph", "a graph or a matrix is required");
        return adjacency_exact(g);
    }
    auto entries = parse_matrix(text);
    const Graph pattern = have_graph ? g : support_graph(entries);
    return ExactMatrix(std::move(entries), pattern);
}

bool has_lambda(const Inputs& in) {
    return !in.lambda.empty() || !in.lambda_minpoly.empty() || !in.lambda_poly.empty() || in.lambda_float.has_value();
}

Eigenvalue load_lambda(const Inputs& in, bool allow_float) {
    const int given = !in.lambda.empty() + !in.lambda_minpoly.empty() + !in.lambda_poly.empty() + in.lambda_float.has_value();
    if (given != 1) throw CLI::ValidationError("--lambda", "give exactly one eigenvalue descriptor");
    if (!in.lambda.empty()) return Eigenvalue::rational(parse_rational(in.lambda));
    if (!in.lambda_minpoly.empty()) return Eigenvalue::algebraic(make_monic(parse_coefficients(in.lambda_minpoly)), in.lambda_near);
    if (!in.lambda_poly.empty()) {
        if (in.lambda_interval.empty()) throw CLI::ValidationError("--lambda-interval", "required with --lambda-poly");
        const auto comma = in.lambda_interval.find(',');
        if (comma == std::string::npos) throw Error(ErrorKind::Parse, "interval must be 'lo,hi'");
        RootInterval iv{parse_rational(in.lambda_interval.substr(0, comma)),
                        parse_rational(in.lambda_interval.substr(comma + 1))};
        const RatPolynomial q = make_monic(parse_coefficients(in.lambda_poly));
        const double mid = mpq_class((iv.lo + iv.hi) / 2).get_d();
        return Eigenvalue::isolated(q, iv, mid, in.lambda_minimal);
    }
    if (!allow_float && !in.numeric) {
        throw CLI::ValidationError("--lambda-float", "floating eigenvalues need --numeric");
    }
    return Eigenvalue::numeric(*in.lambda_float);
}

std::vector<Vertex> parse_list(const std::string& text) {
    std::vector<Vertex> out;
    std::stringstream s(text);
    std::string item;
    while (std::getline(s, item, ',')) {
        if (item.empty()) throw Error(ErrorKind::Parse, "empty entry in list '" + text + "'");
        std::size_t used = 0;
        const unsigned long v = std::stoul(item, &used);
        if (used != item.size()) throw Error(ErrorKind::Parse, "bad vertex '" + item + "'");
        out.push_back(static_cast<Vertex>(v));
    }
    return out;
}

void print(const Output& out, const json& j, const std::string& human) {
    if (out.json) {
        std::cout << j.dump(2) << '\n';
    } else {
        std::cout << human << '\n';
    }
}

int error_exit(const std::string& kind, const std::string& message, int code) {
    std::cerr << json{{"error", kind}, {"message", message}}.dump() << '\n';
    return code;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Eigenvalue multiplicities of Hermitian matrices on graphs"};
    app.set_version_flag("--version", std::string("specmult ") + SPECMULT_VERSION);
    app.require_subcommand(1);

    Inputs in;
    Output out;
    int result = exit_ok;

    auto* analyze = app.add_subcommand("analyze", "Structure of a graph: theta, pendant paths, family");
    add_graph_options(analyze, in);
    analyze->add_flag("--json", out.json, "JSON output");
    analyze->callback([&] {
        const Graph g = load_graph(in, true);
        const auto report = analyze_structure(g);
        std::ostringstream h;
        h << "n=" << g.order() << " m=" << g.size() << " theta=" << report.theta << " p=" << report.p
          << " family=" << to_string(report.family.family);
        print(out, to_json(report), h.str());
    });

    bool exact_only = false;
    double tol = default_tolerance;
    auto* mult = app.add_subcommand("mult", "Multiplicity of an eigenvalue, or the certified spectrum");
    add_graph_options(mult, in);
    add_matrix_options(mult, in);
    add_lambda_options(mult, in);
    mult->add_flag("--exact", exact_only, "Refuse floating eigenvalues");
    mult->add_option("--tol", tol, "Cluster tolerance for floating eigenvalues");
    mult->add_flag("--json", out.json, "JSON output");
    mult->callback([&] {
        const Graph g = load_graph(in, false);
        const ExactMatrix b = load_matrix(in, g, g.order() > 0 || !in.graph_file.empty() || !in.graph_inline.empty());
        if (!has_lambda(in)) {
            const auto s = certify_spectrum(b);
            std::ostringstream h;
            for (const auto& ev : s.eigenvalues) h << ev.lambda.to_string() << "  x" << ev.multiplicity << '\n';
            h << (s.complete ? "complete" : "incomplete");
            print(out, to_json(s), h.str());
            return;
        }
        const Eigenvalue lambda = load_lambda(in, !exact_only);
        if (exact_only && !lambda.is_exact()) throw CLI::ValidationError("--exact", "needs an exact eigenvalue");
        const auto r = multiplicity(b, lambda, tol);
        print(out, to_json(r), std::to_string(r.multiplicity));
    });

    auto* classify = app.add_subcommand("classify", "Which form of the 1-deficient classification applies");
    add_graph_options(classify, in);
    add_matrix_options(classify, in);
    add_lambda_options(classify, in);
    classify->add_flag("--json", out.json, "JSON output");
    classify->callback([&] {
        const Graph g = load_graph(in, true);
        const ExactMatrix b = load_matrix(in, g, true);
        const auto o = conclusion_classifier(g, b, load_lambda(in, false));
        std::ostringstream h;
        h << to_string(o.verdict) << " (m=" << o.multiplicity << ", 2theta+p-1=" << 2 * o.theta + o.p - 1
          << ", direct " << to_string(o.direct) << ")";
        print(out, to_json(o), h.str());
    });

    std::string relation;
    std::optional<Vertex> vertex, u, v;
    std::string edge, path, g_side, gains;
    double alpha = 0.0;
    auto* check = app.add_subcommand("check", "Evaluate one bound, predicate or relation on an instance");
    check->add_option("--relation", relation,
                      "interlace-v, interlace-e, guvh, path-removal, pendant-cycle, theta-infty, gain-cycle, "
                      "upper-bound, tree-equality, classifier, cstar, nullity-corollary, minus-one-corollary, "
                      "cycle-equality, bound-profile")
        ->required();
    add_graph_options(check, in);
    add_matrix_options(check, in);
    add_lambda_options(check, in);
    check->add_option("--vertex", vertex, "Witness vertex (v, x or y)");
    check->add_option("--edge", edge, "Witness edge 'a,b'");
    check->add_option("--path", path, "Witness path 'a,b,c'");
    check->add_option("--g-side", g_side, "GuvH: vertices of G");
    check->add_option("--u", u, "GuvH: u in G");
    check->add_option("--v", v, "GuvH: v in H");
    check->add_option("--alpha", alpha, "Gain cycle: alpha in [0, 1)");
    check->add_option("--gains", gains, "Gain cycle: real gains per edge");
    check->add_flag("--json", out.json, "JSON output");
    check->callback([&] {
        AssertionInstance a;
        a.predicate = relation;
        a.graph = load_graph(in, true);
        if (!in.matrix_file.empty() || !in.matrix_inline.empty()) a.matrix = load_matrix(in, a.graph, true);
        if (relation == "gain-cycle") {
            if (!in.lambda_float) throw CLI::ValidationError("--lambda-float", "gain-cycle needs --lambda-float");
            a.lambda_float = *in.lambda_float;
            a.alpha = alpha;
            if (!gains.empty()) {
                std::stringstream s(gains);
                std::string item;
                while (std::getline(s, item, ',')) a.gains.push_back(std::stod(item));
            }
        } else if (has_lambda(in)) {
            a.lambda = load_lambda(in, false);
        }
        a.witness.vertex = vertex;
        if (!edge.empty()) {
            const auto e = parse_list(edge);
            if (e.size() != 2) throw Error(ErrorKind::Parse, "--edge needs 'a,b'");
            a.witness.edge = Edge{std::min(e[0], e[1]), std::max(e[0], e[1])};
        }
        if (!path.empty()) a.witness.path = parse_list(path);
        if (!g_side.empty()) a.witness.g_side = VertexSet(parse_list(g_side));
        a.witness.u = u;
        a.witness.v = v;
        const auto o = evaluate_assertion(a);
        json j{{"predicate", relation}, {"applicable", o.applicable}};
        if (o.applicable) {
            j["holds"] = o.holds;
            j["expected"] = o.expected;
            j["observed"] = o.observed;
        }
        const std::string h = !o.applicable ? "not applicable" : o.holds ? "holds" : "VIOLATED";
        print(out, j, h);
        if (o.applicable && !o.holds) result = exit_discrepancy;
    });

    std::string campaign_name;
    CampaignConfig cfg;
    bool labeled = false;
    std::string out_path;
    auto* verify = app.add_subcommand("verify", "Run a verification campaign");
    verify->add_option("--campaign", campaign_name, "fixtures, cycles, trees, unicyclic, connected, cstar, "
                                                    "theta-infinity, gain-cycles, random, corollaries")
        ->required();
    verify->add_option("--cap", cfg.cap, "Largest order (0: the family cap)");
    verify->add_option("--seeds", cfg.seeds, "Random campaign: matrices per graph");
    verify->add_option("--graphs", cfg.graphs, "Random campaign: sampled graphs");
    verify->add_option("--guvh", cfg.guvh_instances, "Random campaign: GuvH instances");
    verify->add_option("--seed", cfg.seed, "Base seed");
    verify->add_option("--jobs", cfg.jobs, "Worker threads");
    verify->add_flag("--labeled", labeled, "Trees/connected: every labeled graph, bound check only");
    verify->add_option("--out", out_path, "Write discrepancies and summary as JSON lines");
    verify->add_flag("--json", out.json, "JSON output");
    verify->callback([&] {
        cfg.campaign = parse_campaign(campaign_name);
        cfg.dedup = !labeled;
        if (const char* budget = std::getenv("SPECMULT_TIME_BUDGET_SECS")) cfg.time_budget = std::atof(budget);
        const auto r = run_campaign(cfg);
        const std::string lines = to_jsonl(r);
        if (!out_path.empty()) {
            std::ofstream f(out_path);
            if (!f) throw Error(ErrorKind::InvalidArgument, "cannot write " + out_path);
            f << lines;
        }
        std::ostringstream h;
        h << r.summary.campaign << ": " << r.summary.instances << " instances, " << r.summary.checks << " checks, "
          << r.summary.discrepancies << " discrepancies" << (r.summary.partial ? " (partial)" : "");
        print(out, to_json(r.summary), h.str());
        if (r.summary.discrepancies > 0) {
            result = exit_discrepancy;
        } else if (r.summary.partial) {
            std::cerr << json{{"error", "TimeBudgetExceeded"}, {"message", "time budget ran out"}}.dump() << '\n';
            result = exit_domain;
        }
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);
        app.exit(e);
        return exit_usage;
    } catch (const Error& e) {
        return error_exit(std::string(to_string(e.kind())), e.what(), exit_domain);
    } catch (const std::exception& e) {
        return error_exit("InvalidArgument", e.what(), exit_domain);
    }
    return result;
}
