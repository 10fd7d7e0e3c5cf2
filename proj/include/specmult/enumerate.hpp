#pragma once

#include "specmult/errors.hpp"
#include "specmult/graph.hpp"

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <span>
#include <vector>

namespace specmult {

namespace caps {
inline constexpr std::size_t labeled_trees = 9;
inline constexpr std::size_t unlabeled_trees = 10;
inline constexpr std::size_t unicyclic = 9;
inline constexpr std::size_t connected = 7;
inline constexpr std::size_t cstar = 10;
inline constexpr std::size_t theta_infinity_param = 8;
inline constexpr std::size_t gain_cycle = 10;
} // namespace caps

// ---- isomorphism ----------------------------------------------------------------

/// Colour refinement from degrees. Colours are ranks of the refinement
/// signatures, so they depend only on the isomorphism class.
std::vector<std::uint32_t> refined_colours(const Graph& g);

/// Isomorphism invariant: order, size and the sorted signature multisets
/// of every refinement round. Equal for isomorphic graphs.
std::vector<std::uint32_t> invariant_key(const Graph& g);

/// Exact test by backtracking over colour-compatible vertex maps.
bool isomorphic(const Graph& a, const Graph& b);

/// Keeps one representative per isomorphism class, in insertion order.
class IsoClassSet {
public:
    /// True if g started a new class.
    bool insert(const Graph& g);
    const std::vector<Graph>& graphs() const noexcept { return graphs_; }
    std::size_t size() const noexcept { return graphs_.size(); }

private:
    std::map<std::vector<std::uint32_t>, std::vector<std::size_t>> buckets_;
    std::vector<Graph> graphs_;
};

// ---- trees ----------------------------------------------------------------------

/// Labeled tree on seq.size() + 2 vertices. Throws Error(InvalidArgument)
/// when an entry is out of range.
Graph tree_from_pruefer(std::span<const Vertex> seq);

/// Calls fn on each of the n^(n-2) labeled trees in lexicographic Pruefer
/// order; returning false stops early. 2 <= n <= caps::labeled_trees,
/// Error(CapExceeded) above, Error(ParameterOutOfRange) below.
void for_each_labeled_tree(std::size_t n, const std::function<bool(const Graph&)>& fn);

/// One tree per isomorphism class, 1 <= n <= caps::unlabeled_trees.
std::vector<Graph> unlabeled_trees(std::size_t n);

/// All labeled trees (n <= caps::labeled_trees) or one per class.
std::vector<Graph> enumerate_trees(std::size_t n, bool dedup);

// ---- unicyclic and connected graphs -------------------------------------------------

/// Connected graphs with cyclomatic number 1, one per isomorphism class,
/// 3 <= n <= caps::unicyclic.
std::vector<Graph> enumerate_unicyclic(std::size_t n);

/// Number of edge subsets on n labeled vertices (2^(n(n-1)/2)).
std::uint64_t edge_subset_count(std::size_t n);

/// The graph whose edges are the set bits of mask, pairs (i, j), i < j, in
/// lexicographic order. Nothing if it is disconnected.
std::optional<Graph> connected_from_mask(std::size_t n, std::uint64_t mask);

/// All connected labeled graphs, 1 <= n <= caps::connected.
void for_each_connected_labeled(std::size_t n, const std::function<bool(const Graph&)>& fn);

/// One connected graph per isomorphism class, 1 <= n <= caps::connected.
std::vector<Graph> enumerate_connected(std::size_t n);

// ---- named shapes -------------------------------------------------------------------

struct ShapeInstance {
    Graph graph;
    std::string name; // e.g. "cstar(5,2)" or "theta(2,3,3)"
};

/// Every C* shape cstar(m, k) with m >= 3 and m + 1 + k <= max_order.
std::vector<ShapeInstance> cstar_shapes(std::size_t max_order);

/// theta(p,q,l) (p <= q <= l, at most one length 1) and infinity(p,q,l)
/// (3 <= p <= q, l >= 1) for parameters up to max_param.
std::vector<ShapeInstance> theta_infinity_graphs(std::size_t max_param);

} // namespace specmult
