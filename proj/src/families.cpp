#include "specmult/families.hpp"

#include "specmult/errors.hpp"

#include <vector>

namespace specmult::families {

Graph path(std::size_t n) {
    std::vector<Edge> edges;
    for (Vertex v = 1; v < n; ++v) edges.push_back(Edge{v - 1, v});
    return Graph(n, edges);
}

Graph cycle(std::size_t n) {
    if (n < 3) throw Error(ErrorKind::ParameterOutOfRange, "cycle needs n >= 3");
    std::vector<Edge> edges;
    for (Vertex v = 1; v < n; ++v) edges.push_back(Edge{v - 1, v});
    edges.push_back(Edge{0, n - 1});
    return Graph(n, edges);
}

Graph star(std::size_t leaves) {
    std::vector<Edge> edges;
    for (Vertex v = 1; v <= leaves; ++v) edges.push_back(Edge{0, v});
    return Graph(leaves + 1, edges);
}

Graph spider(std::span<const std::size_t> legs) {
    std::vector<Edge> edges;
    Vertex next = 1;
    for (std::size_t len : legs) {
        Vertex prev = 0;
        for (std::size_t i = 0; i < len; ++i) {
            edges.push_back(Edge{prev, next});
            prev = next++;
        }
    }
    return Graph(next, edges);
}

Graph double_star(std::size_t a, std::size_t b) {
    std::vector<Edge> edges{Edge{0, 1}};
    Vertex next = 2;
    for (std::size_t i = 0; i < a; ++i) edges.push_back(Edge{0, next++});
    for (std::size_t i = 0; i < b; ++i) edges.push_back(Edge{1, next++});
    return Graph(next, edges);
}

Graph theta(std::size_t p, std::size_t q, std::size_t l) {
    const std::size_t ones = (p == 1) + (q == 1) + (l == 1);
    if (p == 0 || q == 0 || l == 0 || ones > 1) {
        throw Error(ErrorKind::ParameterOutOfRange, "theta graph needs p,q,l >= 1 with at most one equal to 1");
    }
    std::vector<Edge> edges;
    Vertex next = 2;
    for (std::size_t len : {p, q, l}) {
        Vertex prev = 0;
        for (std::size_t i = 1; i < len; ++i) {
            edges.push_back(Edge{prev, next});
            prev = next++;
        }
        edges.push_back(Edge{prev, 1});
    }
    return Graph(next, edges);
}

Graph infinity(std::size_t p, std::size_t q, std::size_t l) {
    if (p < 3 || q < 3 || l < 1) {
        throw Error(ErrorKind::ParameterOutOfRange, "infinity graph needs p,q >= 3 and l >= 1");
    }
    std::vector<Edge> edges;
    const Vertex a = 0;
    const Vertex b = l == 1 ? 0 : 1;
    Vertex next = l == 1 ? 1 : 2;
    auto add_cycle = [&](Vertex anchor, std::size_t len) {
        Vertex prev = anchor;
        for (std::size_t i = 1; i < len; ++i) {
            edges.push_back(Edge{prev, next});
            prev = next++;
        }
        edges.push_back(Edge{prev, anchor});
    };
    add_cycle(a, p);
    add_cycle(b, q);
    if (l >= 2) {
        Vertex prev = a;
        for (std::size_t i = 1; i + 1 < l; ++i) {
            edges.push_back(Edge{prev, next});
            prev = next++;
        }
        edges.push_back(Edge{prev, b});
    }
    return Graph(next, edges);
}

Graph cstar(std::size_t m, std::size_t pstar) {
    if (m < 3) throw Error(ErrorKind::ParameterOutOfRange, "C* needs a cycle of length >= 3");
    std::vector<Edge> edges;
    for (Vertex v = 1; v < m; ++v) edges.push_back(Edge{v - 1, v});
    edges.push_back(Edge{0, m - 1});
    edges.push_back(Edge{0, m});
    for (Vertex v = m + 1; v <= m + pstar; ++v) edges.push_back(Edge{v - 1, v});
    return Graph(m + 1 + pstar, edges);
}

Graph disjoint_union(const Graph& a, const Graph& b) {
    std::vector<Edge> edges(a.edges().begin(), a.edges().end());
    const std::size_t shift = a.order();
    for (const Edge& e : b.edges()) edges.push_back(Edge{e.u + shift, e.v + shift});
    return Graph(a.order() + b.order(), edges);
}

Graph join_by_edge(const Graph& g, Vertex u, const Graph& h, Vertex v) {
    if (u >= g.order() || v >= h.order()) {
        throw Error(ErrorKind::IndexOutOfRange, "join vertex out of range");
    }
    return add_edge(disjoint_union(g, h), Edge{u, v + g.order()});
}

} // namespace specmult::families
