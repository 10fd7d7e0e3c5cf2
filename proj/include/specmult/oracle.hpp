#pragma once

#include "specmult/enumerate.hpp"
#include "specmult/theorems.hpp"

#include <nlohmann/json.hpp>

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace specmult {

// ---- single assertions ------------------------------------------------------------

/// One checkable claim on one instance. `predicate` is one of
///   upper-bound, tree-equality, classifier, cstar, nullity-corollary,
///   minus-one-corollary, cycle-equality, bound-profile,
/// or a relation name accepted by parse_relation.
struct AssertionInstance {
    std::string predicate;
    Graph graph;
    /// Adjacency matrix of `graph` when empty.
    std::optional<ExactMatrix> matrix;
    std::optional<Eigenvalue> lambda;
    RelationWitness witness;
    // gain-cycle only
    double alpha = 0.0;
    double lambda_float = 0.0;
    std::vector<double> gains;
};

struct AssertionOutcome {
    bool holds = false;
    /// False when a side condition is not met; holds is meaningless then.
    bool applicable = true;
    nlohmann::json expected;
    nlohmann::json observed;
};

/// Re-evaluates the claim from scratch. Domain errors propagate.
AssertionOutcome evaluate_assertion(const AssertionInstance& a);

nlohmann::json instance_to_json(const AssertionInstance& a);

/// `specmult check ...` command line that replays the assertion.
std::string repro_command(const AssertionInstance& a);

/// Inline graph/matrix text: newlines become ';'.
std::string inline_text(const std::string& text);

/// Multiplicities of every distinct adjacency eigenvalue, read from the
/// squarefree decomposition of the integer characteristic polynomial.
std::vector<std::size_t> adjacency_multiplicity_profile(const Graph& g);

// ---- campaigns ----------------------------------------------------------------------

enum class Campaign {
    Fixtures,
    Cycles,
    Trees,
    Unicyclic,
    Connected,
    CStar,
    ThetaInfinity,
    GainCycles,
    Random,
    Corollaries,
};
std::string to_string(Campaign c);
/// Throws Error(Parse).
Campaign parse_campaign(std::string_view name);
std::vector<Campaign> all_campaigns();

struct CampaignConfig {
    Campaign campaign = Campaign::Fixtures;
    /// Largest order (theta-infinity: largest parameter). 0 selects the
    /// family's cap.
    std::size_t cap = 0;
    /// Trees and connected graphs: one per isomorphism class, or every
    /// labeled graph. Labeled connected graphs only get the bound check.
    bool dedup = true;
    /// Random campaign: matrices per graph, sampled graphs, GuvH instances.
    std::size_t seeds = 16;
    std::size_t graphs = 500;
    std::size_t guvh_instances = 200;
    std::uint64_t seed = 1;
    std::size_t jobs = 1;
    /// Wall-clock budget in seconds, 0 for none.
    double time_budget = 0.0;
};

struct Discrepancy {
    std::string campaign;
    std::string predicate;
    nlohmann::json instance;
    nlohmann::json expected;
    nlohmann::json observed;
    std::string repro;
};

struct CampaignSummary {
    std::string campaign;
    std::size_t cap = 0;
    bool dedup = true;
    std::size_t instances = 0;
    std::size_t checks = 0;
    std::map<std::string, std::size_t> checks_by_predicate;
    std::size_t discrepancies = 0;
    /// Eigenvalues left without an exact descriptor (not checked).
    std::size_t uncertified = 0;
    /// The time budget ran out before every instance was processed.
    bool partial = false;
};

struct CampaignResult {
    CampaignSummary summary;
    std::vector<Discrepancy> discrepancies;
};

nlohmann::json to_json(const Discrepancy& d);
nlohmann::json to_json(const CampaignSummary& s);

/// Deterministic for a fixed config: the reducer merges per-instance results
/// in instance order whatever the number of jobs. Throws Error(CapExceeded).
CampaignResult run_campaign(const CampaignConfig& cfg);

/// One JSON line per discrepancy followed by the summary line.
std::string to_jsonl(const CampaignResult& r);

std::size_t default_cap(Campaign c, bool dedup);

} // namespace specmult
