#pragma once

#include "specmult/graph.hpp"

#include <span>

// Constructors for the named graph families used throughout the library and
// its tests. Vertex numbering is documented per function so that witnesses
// (deleted vertices, split points) can be chosen by index.

namespace specmult::families {

/// P_n: 0-1-...-(n-1).
Graph path(std::size_t n);

/// C_n: 0-1-...-(n-1)-0, n >= 3.
Graph cycle(std::size_t n);

/// K_{1,k}: center 0, leaves 1..k.
Graph star(std::size_t leaves);

/// Center 0 with legs of the given vertex counts, numbered leg by leg
/// outward from the center.
Graph spider(std::span<const std::size_t> legs);

/// Two adjacent centers 0 and 1 with a and b pendant leaves.
Graph double_star(std::size_t a, std::size_t b);

/// theta(p,q,l): majors 0 and 1 joined by three internally disjoint paths of
/// lengths p, q, l (at most one of them equal to 1).
Graph theta(std::size_t p, std::size_t q, std::size_t l);

/// infinity(p,q,l): cycles C_p (through vertex 0) and C_q (through vertex 1)
/// joined by a path of length l-1 between 0 and 1; l = 1 identifies 0 and 1.
Graph infinity(std::size_t p, std::size_t q, std::size_t l);

/// C* shape: cycle C_m on 0..m-1, w = m adjacent to vertex 0, and a path
/// P* of pstar vertices m+1..m+pstar hanging from w (pstar may be 0).
Graph cstar(std::size_t m, std::size_t pstar);

/// Disjoint union, second graph shifted by first.order().
Graph disjoint_union(const Graph& a, const Graph& b);

/// GuvH: disjoint union of G and H plus the edge u (in G) - v (in H).
Graph join_by_edge(const Graph& g, Vertex u, const Graph& h, Vertex v);

} // namespace specmult::families
