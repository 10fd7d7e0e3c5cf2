#pragma once

#include "specmult/errors.hpp"
#include "specmult/graph.hpp"
#include "specmult/scalar.hpp"

#include <cmath>
#include <cstdint>
#include <string>
#include <string_view>
#include <type_traits>
#include <vector>

namespace specmult {

namespace detail {

inline bool is_zero(const GaussianRational& z) { return z.is_zero(); }
inline bool is_zero(const ApproxComplex& z) { return z == ApproxComplex{}; }
inline GaussianRational conj(const GaussianRational& z) { return z.conj(); }
inline ApproxComplex conj(const ApproxComplex& z) { return std::conj(z); }
inline bool is_real(const GaussianRational& z) { return z.is_real(); }
inline bool is_real(const ApproxComplex& z) { return z.imag() == 0.0; }
inline bool is_finite(const GaussianRational&) { return true; }
inline bool is_finite(const ApproxComplex& z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

} // namespace detail

/// Row-major square matrix without structural constraints.
template <class S>
class DenseMatrix {
public:
    DenseMatrix() = default;
    explicit DenseMatrix(std::size_t n) : n_(n), a_(n * n) {}

    std::size_t dim() const noexcept { return n_; }
    S& operator()(std::size_t i, std::size_t j) { return a_[i * n_ + j]; }
    const S& operator()(std::size_t i, std::size_t j) const { return a_[i * n_ + j]; }

    bool operator==(const DenseMatrix&) const = default;

private:
    std::size_t n_ = 0;
    std::vector<S> a_;
};

/// True iff m is Hermitian, its diagonal is real, and its off-diagonal
/// support is exactly E(g). Throws Error(DimensionMismatch).
template <class S>
bool validate_pattern(const DenseMatrix<S>& m, const Graph& g) {
    if (m.dim() != g.order()) throw Error(ErrorKind::DimensionMismatch, "matrix and graph orders differ");
    const std::size_t n = m.dim();
    for (std::size_t i = 0; i < n; ++i) {
        if (!detail::is_finite(m(i, i)) || !detail::is_real(m(i, i))) return false;
        for (std::size_t j = i + 1; j < n; ++j) {
            if (!detail::is_finite(m(i, j))) return false;
            if (!(m(i, j) == detail::conj(m(j, i)))) return false;
            if (detail::is_zero(m(i, j)) == g.has_edge(i, j)) return false;
        }
    }
    return true;
}

/// Hermitian matrix in S(G) for its pattern graph G. Invariants are checked
/// on construction, so every instance is a member of S(pattern).
template <class S>
class HermitianMatrix {
public:
    using Scalar = S;

    HermitianMatrix() = default;
    /// Throws Error(DimensionMismatch | PatternMismatch).
    HermitianMatrix(DenseMatrix<S> entries, Graph pattern)
        : entries_(std::move(entries)), pattern_(std::move(pattern)) {
        if (!validate_pattern(entries_, pattern_)) {
            throw Error(ErrorKind::PatternMismatch, "matrix is not Hermitian with the pattern of its graph");
        }
    }

    std::size_t dim() const noexcept { return entries_.dim(); }
    const Graph& pattern() const noexcept { return pattern_; }
    const DenseMatrix<S>& entries() const noexcept { return entries_; }
    const S& operator()(std::size_t i, std::size_t j) const { return entries_(i, j); }

    bool operator==(const HermitianMatrix& o) const { return entries_ == o.entries_ && pattern_ == o.pattern_; }

private:
    DenseMatrix<S> entries_;
    Graph pattern_;
};

using ExactMatrix = HermitianMatrix<GaussianRational>;
using ApproxMatrix = HermitianMatrix<ApproxComplex>;

template <class S>
bool validate_pattern(const HermitianMatrix<S>& b, const Graph& g) {
    return validate_pattern(b.entries(), g);
}

template <class S>
HermitianMatrix<S> adjacency_matrix(const Graph& g) {
    DenseMatrix<S> m(g.order());
    for (const Edge& e : g.edges()) {
        m(e.u, e.v) = S(1);
        m(e.v, e.u) = S(1);
    }
    return HermitianMatrix<S>(std::move(m), g);
}

inline ExactMatrix adjacency_exact(const Graph& g) { return adjacency_matrix<GaussianRational>(g); }
inline ApproxMatrix adjacency_approx(const Graph& g) { return adjacency_matrix<ApproxComplex>(g); }

ApproxMatrix to_approx(const ExactMatrix& b);

/// Off-diagonal support of a dense matrix, read as a graph.
template <class S>
Graph support_graph(const DenseMatrix<S>& m) {
    std::vector<Edge> edges;
    for (std::size_t i = 0; i < m.dim(); ++i) {
        for (std::size_t j = i + 1; j < m.dim(); ++j) {
            if (!detail::is_zero(m(i, j)) || !detail::is_zero(m(j, i))) edges.push_back(Edge{i, j});
        }
    }
    return Graph(m.dim(), edges);
}

template <class S>
struct Submatrix {
    HermitianMatrix<S> matrix;
    SubgraphMap map;
};

/// B[keep]: rows and columns in the order of the induced-subgraph map.
/// Throws Error(IndexOutOfRange).
template <class S>
Submatrix<S> principal_submatrix(const HermitianMatrix<S>& b, const VertexSet& keep) {
    SubgraphMap map = induced_subgraph(b.pattern(), keep);
    const std::size_t k = map.to_parent.size();
    DenseMatrix<S> m(k);
    for (std::size_t i = 0; i < k; ++i) {
        for (std::size_t j = 0; j < k; ++j) m(i, j) = b(map.to_parent[i], map.to_parent[j]);
    }
    HermitianMatrix<S> sub(std::move(m), map.child);
    return Submatrix<S>{std::move(sub), std::move(map)};
}

/// The matrix of G - e obtained by zeroing the two entries of edge e.
/// Throws Error(MissingEdge).
template <class S>
HermitianMatrix<S> delete_edge_entries(const HermitianMatrix<S>& b, Edge e) {
    Graph g = delete_edge(b.pattern(), e);
    DenseMatrix<S> m = b.entries();
    m(e.u, e.v) = S{};
    m(e.v, e.u) = S{};
    return HermitianMatrix<S>(std::move(m), std::move(g));
}

/// True iff every entry is a real integer representable in int64.
bool is_integral_real(const ExactMatrix& b);

// ---- gain graphs -----------------------------------------------------------

/// Graph with a unit-modulus gain per edge; gain(u, v) = conj(gain(v, u)).
class GainGraph {
public:
    /// gains[i] belongs to base.edges()[i] oriented from its smaller to its
    /// larger endpoint. Throws Error(DimensionMismatch | InvalidArgument).
    GainGraph(Graph base, std::vector<ApproxComplex> gains);

    /// All gains equal to 1.
    static GainGraph trivial(Graph base);

    const Graph& base() const noexcept { return base_; }
    /// Gain of the oriented edge u -> v. Throws Error(MissingEdge).
    ApproxComplex gain(Vertex u, Vertex v) const;
    /// Overrides the gain of u -> v (and conj on v -> u).
    void set_gain(Vertex u, Vertex v, ApproxComplex value);

private:
    std::size_t edge_index(Vertex u, Vertex v) const;

    Graph base_;
    std::vector<ApproxComplex> gains_;
};

struct CycleGain {
    ApproxComplex value;
    /// Argument in (-pi, pi].
    double rho() const { return std::arg(value); }
};

/// Product of the gains along the cycle starting from vertex 0 in the
/// direction of its smaller neighbour. Throws Error(NotACycle).
CycleGain cycle_gain(const GainGraph& phi);

/// alpha * D(G) + (1 - alpha) * A(phi). Throws Error(AlphaOutOfRange).
ApproxMatrix a_alpha_gain(const GainGraph& phi, double alpha);

/// Exact variant for gains in {1, -1, i, -i} and rational alpha in [0, 1).
/// Throws Error(AlphaOutOfRange | InvalidArgument).
ExactMatrix a_alpha_gain_exact(const GainGraph& phi, const mpq_class& alpha);

// ---- random sampling -------------------------------------------------------

struct RandomConfig {
    long numerator_bound = 10;   // numerators drawn from [-bound, bound]
    long denominator_max = 4;    // denominators drawn from [1, max]
    long diagonal_bound = 10;    // diagonal in [-bound, bound]
    bool complex_weights = true; // false: real symmetric samples
    bool zero_diagonal = false;
};

/// Deterministic sample of S(G) for the given seed. Every edge weight is a
/// nonzero Gaussian rational (zero draws are redrawn).
ExactMatrix random_in_S(const Graph& g, std::uint64_t seed, const RandomConfig& config = {});

// ---- text format -----------------------------------------------------------

/// First line n, then n rows of n entries. Entries use the Gaussian-rational
/// syntax of parse_gaussian_rational; a detached "i" token ("1/2+3/4 i") is
/// accepted. Throws ParseError.
DenseMatrix<GaussianRational> parse_matrix(std::string_view text);
std::string serialize_matrix(const ExactMatrix& b);
std::string serialize_matrix(const ApproxMatrix& b);

} // namespace specmult
