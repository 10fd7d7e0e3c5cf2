#pragma once

#include "specmult/graph.hpp"

#include <nlohmann/json_fwd.hpp>

#include <string>
#include <vector>

namespace specmult {

/// Leaf v_1 followed by degree-2 vertices v_2..v_k; anchor is the vertex of
/// degree >= 3 adjacent to v_k.
struct PendantPath {
    std::vector<Vertex> vertices;
    Vertex anchor = 0;
};

/// X: all vertices of degree >= 3. M: those of X that lie on no cycle.
struct MajorSets {
    VertexSet X;
    VertexSet M;
};

/// A biconnected component or a bridge.
struct Block {
    VertexSet vertices;
    std::size_t edge_count = 0;
    bool is_cycle_block = false;
};

struct PendantCycle {
    VertexSet cycle;
    Vertex anchor = 0;
};

enum class Family {
    Path,
    Cycle,
    ThetaGraph,
    InfinityGraph,
    CStarShape,
    ClassU,
    UnicyclicOther,
    TreeGeneral,
    Other,
};

std::string to_string(Family f);

/// Family tag. For ThetaGraph the path lengths are (p >= q >= l); for
/// InfinityGraph p >= q are the cycle lengths and l - 1 the connector length.
/// For CStarShape p is the cycle length and q = |P*| (the path beyond w).
struct FamilyTag {
    Family family = Family::Other;
    std::size_t p = 0;
    std::size_t q = 0;
    std::size_t l = 0;

    bool operator==(const FamilyTag&) const = default;
};

/// Throws Error(NotApplicable) for paths and cycles, Error(NotConnected).
std::vector<PendantPath> pendant_paths(const Graph& g);
VertexSet cycle_vertices(const Graph& g);
MajorSets major_sets(const Graph& g);
std::vector<Block> blocks(const Graph& g);
/// Throws Error(NotConnected).
FamilyTag classify_family(const Graph& g);
std::vector<PendantCycle> pendant_cycles(const Graph& g);

/// Class U: connected unicyclic graphs with at most one pendant vertex.
bool in_class_u(const Graph& g);

/// Decomposition of a C* shape into its cycle, the attachment vertex w and
/// the (possibly empty) path P* ordered from w outward.
struct CStarParts {
    VertexSet cycle;
    Vertex cycle_anchor = 0;
    Vertex w = 0;
    std::vector<Vertex> pstar;
};
/// Throws Error(NotCStarShape).
CStarParts cstar_parts(const Graph& g);

struct StructureReport {
    std::size_t theta = 0;
    std::size_t p = 0;
    std::size_t omega = 0;
    MajorSets majors;
    std::vector<Block> blocks;
    std::vector<PendantPath> pendant_paths;
    std::vector<PendantCycle> pendant_cycles;
    FamilyTag family;
    bool connected = false;
};

StructureReport analyze_structure(const Graph& g);
nlohmann::json to_json(const StructureReport& report);
nlohmann::json to_json(const FamilyTag& tag);

} // namespace specmult
