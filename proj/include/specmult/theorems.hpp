#pragma once

#include "specmult/hermitian.hpp"
#include "specmult/spectra.hpp"
#include "specmult/structure.hpp"

#include <nlohmann/json.hpp>

#include <optional>
#include <string>
#include <vector>

namespace specmult {

/// One named clause of a predicate with the values it looked at.
struct SubCheck {
    std::string name;
    bool holds = false;
    nlohmann::json detail;
};

using Evidence = std::vector<SubCheck>;

struct PredicateResult {
    bool value = false;
    Evidence evidence;
    /// False when some clause was decided from a floating eigenvalue.
    bool certified = true;
};

/// Outcome of a single relation or bound check. A failing report carries the
/// full instance (graph, matrix, eigenvalue) so it can be replayed.
struct CheckReport {
    std::string name;
    bool holds = false;
    nlohmann::json lhs;
    nlohmann::json rhs;
    nlohmann::json instance;
    Evidence evidence;
};

nlohmann::json to_json(const SubCheck& c);
nlohmann::json to_json(const PredicateResult& r);
nlohmann::json to_json(const CheckReport& r);

/// Graph, matrix text and eigenvalue descriptor of an instance.
nlohmann::json instance_json(const ExactMatrix& b, const Eigenvalue& lambda);

// ---- bound -------------------------------------------------------------------------

/// m <= 2 theta + p, with equality only for a cycle with m = 2.
/// Throws Error(PatternMismatch) if b's pattern is not g, Error(NotConnected),
/// Error(NotApplicable) for a single vertex.
CheckReport check_upper_bound(const Graph& g, const ExactMatrix& b, const Eigenvalue& lambda);
CheckReport check_upper_bound(const MultiplicityProbe& probe);

// ---- trees and unicyclic graphs --------------------------------------------------------

/// T is a path, or every component of T - X(T) is a path whose principal
/// submatrix has lambda as an eigenvalue and no two vertices of X(T) are
/// adjacent. Throws Error(NotATree); Error(NotApplicable) when p < 2.
PredicateResult tree_equality_predicate(const Graph& t, const ExactMatrix& b, const Eigenvalue& lambda);
PredicateResult tree_equality_predicate(const MultiplicityProbe& probe);

/// Exactly one cycle vertex has degree >= 3 and it has degree 3; G - M(G)
/// is one class-U component with multiplicity 2 plus paths that carry lambda;
/// M(G) is independent. Throws Error(NotUnicyclic); Error(NotApplicable) if
/// G has fewer than two pendant paths.
PredicateResult unicyclic_equality_predicate(const Graph& g, const ExactMatrix& b, const Eigenvalue& lambda);
PredicateResult unicyclic_equality_predicate(const MultiplicityProbe& probe);

// ---- the 1-deficient classification -----------------------------------------------------

enum class Verdict {
    AttainsBound,
    OneDeficientFormA,
    OneDeficientFormB,
    OneDeficientFormC,
    OneDeficientFormD,
    TwoPlusDeficient,
};
std::string to_string(Verdict v);
bool is_one_deficient(Verdict v);

/// Where m sits relative to 2 theta + p.
enum class Deficiency { ExceedsBound, AttainsBound, OneDeficient, TwoPlusDeficient };
std::string to_string(Deficiency d);
Deficiency deficiency(std::size_t multiplicity, std::size_t theta, std::size_t p);

struct ClassificationOutcome {
    Verdict verdict = Verdict::TwoPlusDeficient;
    /// "a".."d" for the form whose structure matched, "none" otherwise.
    std::string form;
    Evidence evidence;
    std::size_t multiplicity = 0;
    std::size_t theta = 0;
    std::size_t p = 0;
    bool certified = true;
    /// Direct comparison of the multiplicity with 2 theta + p.
    Deficiency direct = Deficiency::TwoPlusDeficient;
    /// Whether the verdict and the direct comparison say the same thing.
    bool agrees() const;
};

nlohmann::json to_json(const ClassificationOutcome& o);

/// Evaluates the structural form that matches g and its spectral side
/// conditions on principal submatrices. The forms are taken as stated:
/// (a) trees, (b) class U, (c) theta and infinity graphs, (d) graphs with
/// M(G) nonempty whose cycles each hold exactly one major vertex.
/// Throws Error(NotConnected), Error(PatternMismatch), and
/// Error(NotApplicable) when lambda is not an eigenvalue or n < 2.
ClassificationOutcome conclusion_classifier(const Graph& g, const ExactMatrix& b, const Eigenvalue& lambda);
ClassificationOutcome conclusion_classifier(const MultiplicityProbe& probe);

/// Only the structural part of form (d), without any spectral clause.
bool form_d_structure(const Graph& g);

// ---- C* shapes ------------------------------------------------------------------------

/// lambda in sigma(A(P*)) (false for empty P*) and m_A(C_m, lambda) = 2.
/// Throws Error(NotCStarShape).
PredicateResult cstar_adjacency_predicate(const Graph& cstar, const Eigenvalue& lambda);

/// The same clauses read on principal submatrices of an arbitrary b.
PredicateResult cstar_matrix_predicate(const ExactMatrix& b, const Eigenvalue& lambda);

/// The two fixture matrices H1, H2 and the modified C4 (entries at (0,1)
/// and (1,0) set to 2).
ExactMatrix fixture_h1();
ExactMatrix fixture_h2();
ExactMatrix fixture_modified_c4();

/// m(H1, 2) = 2, m(H1[{0,1,2}], 2) = 1, m(H2, -9) = 2, m(H2[{0,1,2}], -9) = 1,
/// m(H2[{4,5}], -9) = 0.
CheckReport remark_counterexample_check();

// ---- corollaries on trees -------------------------------------------------------------------

/// Every leaf is at odd distance from X(T) and all pairwise distances in X(T)
/// are even. Throws Error(NotATree); Error(NotApplicable) when p < 3.
bool corollary_nullity_tree(const Graph& t);

/// T = P_n with n = 2 (mod 3), or d(v, u) = 2 (mod 3) for every leaf v and
/// major vertex u. Throws Error(NotATree); Error(NotApplicable) when n < 2.
bool corollary_minus_one_tree(const Graph& t);

// ---- relations ------------------------------------------------------------------------

enum class Relation {
    InterlaceVertex, // m(G-v) - 1 <= m(G) <= m(G-v) + 1
    InterlaceEdge,   // m(G) <= m(G-e) + 2
    GuvH,            // m(GuvH) = m(H-v) when lambda in sigma(G), not in sigma(G-u)
    PathRemoval,     // m(G \ P) >= m(G) - 1 for a path off every cycle
    PendantCycle,    // m(G) = m(G-x) + 1 for 1+-deficient G
    ThetaInfinity,   // m(G-y) = m(G) - 1 = 2, and m(G-x) = 2 on theta graphs
    GainCycle,       // gain cycle multiplicity at most 2
};
std::string to_string(Relation r);
/// Accepts the CLI names interlace-v, interlace-e, guvh, path-removal,
/// pendant-cycle, theta-infty, gain-cycle. Throws Error(Parse).
Relation parse_relation(std::string_view name);

struct RelationWitness {
    std::optional<Vertex> vertex; // v, x or y
    std::optional<Edge> edge;
    std::vector<Vertex> path;
    /// GuvH: the vertex set of G (containing u); H is its complement and the
    /// edge uv must be the only edge between them.
    VertexSet g_side;
    std::optional<Vertex> u;
    std::optional<Vertex> v;
};

/// Checks one relation on an instance. Throws Error(SideConditionUnmet) when
/// the relation does not apply (that is not a failure).
CheckReport lemma_relation_check(Relation r, const MultiplicityProbe& probe, const RelationWitness& w);

/// Gain cycle: numeric multiplicity of lambda in A_alpha at most 2, and equal
/// to 2 exactly at the listed values when the cycle gain is 1 or -1.
CheckReport gain_cycle_check(const GainGraph& phi, double alpha, double lambda, double tol = 1e-8);

/// Values where A_alpha of a gain cycle has a double eigenvalue:
/// rho = 0 gives 2a + 2(1-a)cos(2 j pi / n), j = 1..ceil(n/2)-1; rho = pi gives
/// 2a + 2(1-a)cos((2j+1) pi / n), j = 0..floor(n/2)-1. Other gains give none.
std::vector<double> gain_cycle_double_values(std::size_t n, double alpha, ApproxComplex cycle_gain);

} // namespace specmult
