// Runs the verification campaigns at their default caps and prints one
// PASS/FAIL line per acceptance criterion. Exit status is 0 only when every
// criterion passes.

#include "specmult/oracle.hpp"

#include <chrono>
#include <cstdio>
#include <map>
#include <string>
#include <vector>

namespace {

using specmult::Campaign;
using specmult::CampaignConfig;
using specmult::CampaignResult;

struct Run {
    CampaignResult result;
    double seconds = 0.0;
};

Run run(const CampaignConfig& cfg) {
    auto start = std::chrono::steady_clock::now();
    Run r;
    r.result = specmult::run_campaign(cfg);
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return r;
}

CampaignConfig config(Campaign c, bool dedup = true) {
    CampaignConfig cfg;
    cfg.campaign = c;
    cfg.dedup = dedup;
    return cfg;
}

bool clean(const Run& r) {
    const auto& s = r.result.summary;
    return s.discrepancies == 0 && s.uncertified == 0 && !s.partial && s.checks > 0;
}

std::size_t count(const Run& r, const std::string& predicate) {
    const auto& by = r.result.summary.checks_by_predicate;
    auto it = by.find(predicate);
    return it == by.end() ? 0 : it->second;
}

void describe(const Run& r) {
    const auto& s = r.result.summary;
    std::printf("    %s cap=%zu dedup=%d: %zu instances, %zu checks, %zu discrepancies, %zu uncertified%s, %.2f s\n",
                s.campaign.c_str(), s.cap, s.dedup ? 1 : 0, s.instances, s.checks, s.discrepancies,
                s.uncertified, s.partial ? ", partial" : "", r.seconds);
    std::size_t shown = 0;
    for (const auto& d : r.result.discrepancies) {
        if (shown++ == 5) {
            std::printf("      ... %zu more\n", r.result.discrepancies.size() - 5);
            break;
        }
        std::printf("      %s: %s\n", d.predicate.c_str(), d.repro.c_str());
    }
}

int failures = 0;

void report(int k, bool pass, const std::string& what) {
    std::printf("CRITERION %d: %s  %s\n", k, pass ? "PASS" : "FAIL", what.c_str());
    std::fflush(stdout);
    if (!pass) ++failures;
}

} // namespace

int main() {
    std::vector<CampaignConfig> configs;

    // 1. fixtures
    Run fixtures = run(config(Campaign::Fixtures));
    describe(fixtures);
    report(1,
           clean(fixtures) && count(fixtures, "remark-values") == 1 && count(fixtures, "modified-c4") == 1 &&
               count(fixtures, "cycle-equality") == 1 && fixtures.seconds < 1.0,
           "fixture multiplicities exact, runtime < 1 s");
    configs.push_back(config(Campaign::Fixtures));

    // 2. cycles
    Run cycles = run(config(Campaign::Cycles));
    describe(cycles);
    std::size_t cycle_pairs = 0;
    for (std::size_t n = 3; n <= 12; ++n) cycle_pairs += (n + 1) / 2 - 1;
    report(2, clean(cycles) && count(cycles, "cycle-equality") == cycle_pairs && cycles.seconds < 5.0,
           "2cos(2k pi/n) has multiplicity 2 in A(C_n), 3 <= n <= 12, runtime < 5 s");
    configs.push_back(config(Campaign::Cycles));

    // 3. trees
    Run trees = run(config(Campaign::Trees));
    describe(trees);
    report(3, clean(trees) && count(trees, "tree-equality") > 0 && trees.seconds < 300.0,
           "deduped trees n <= 10: m <= p-1, equality iff the tree predicate, runtime < 5 min");
    configs.push_back(config(Campaign::Trees));

    // 4. connected labeled
    Run labeled = run(config(Campaign::Connected, false));
    describe(labeled);
    report(4, clean(labeled) && labeled.seconds < 600.0,
           "connected labeled graphs n <= 7: m <= 2 theta + p, equality only on cycles with m = 2, runtime < 10 min");
    configs.push_back(config(Campaign::Connected, false));

    // 5. classifier
    Run unicyclic = run(config(Campaign::Unicyclic));
    Run connected = run(config(Campaign::Connected));
    describe(unicyclic);
    describe(connected);
    report(5,
           clean(unicyclic) && clean(connected) && count(unicyclic, "classifier") > 0 &&
               count(connected, "classifier") > 0,
           "unicyclic n <= 9 and connected n <= 7: verdict one-deficient iff m = 2 theta + p - 1");
    configs.push_back(config(Campaign::Unicyclic));
    configs.push_back(config(Campaign::Connected));

    // 6. random Hermitian matrices
    Run random = run(config(Campaign::Random));
    describe(random);
    const auto& rs = random.result.summary;
    report(6,
           clean(random) && rs.instances == 500 * 16 + 200 && count(random, "guvh") == 200 &&
               count(random, "interlace-v") > 0 && count(random, "interlace-e") > 0 &&
               count(random, "path-removal") > 0,
           "16 matrices on each of 500 graphs: bound, interlacing and path removal; 200 GuvH instances");
    configs.push_back(config(Campaign::Random));

    // 7. corollaries
    Run corollaries = run(config(Campaign::Corollaries));
    describe(corollaries);
    report(7,
           clean(corollaries) && count(corollaries, "nullity-corollary") > 0 &&
               count(corollaries, "minus-one-corollary") > 0,
           "trees n <= 10: nullity and -1 corollaries match exact rank");
    configs.push_back(config(Campaign::Corollaries));

    // 8. C* lemma plus the non-adjacency counterexamples
    Run cstar = run(config(Campaign::CStar));
    describe(cstar);
    report(8, clean(cstar) && count(cstar, "cstar") > 0 && count(fixtures, "cstar-counterexample") == 2 && clean(fixtures),
           "C* shapes n <= 10: predicate iff m = 2; H_1 and H_2 break the biconditional");
    configs.push_back(config(Campaign::CStar));

    // 9. gain cycles
    Run gain = run(config(Campaign::GainCycles));
    describe(gain);
    report(9, clean(gain) && count(gain, "gain-cycle") > 0,
           "gain cycles n <= 10: multiplicity <= 2, equality exactly at the predicted values");
    configs.push_back(config(Campaign::GainCycles));

    // 10. determinism: rerun every campaign with the same configuration
    std::map<std::string, std::string> first;
    for (const Run* r : {&fixtures, &cycles, &trees, &labeled, &unicyclic, &connected, &random, &corollaries, &cstar, &gain})
        first[r->result.summary.campaign + (r->result.summary.dedup ? "" : "-labeled")] = specmult::to_jsonl(r->result);
    bool identical = true;
    for (const auto& cfg : configs) {
        Run again = run(cfg);
        const auto key = again.result.summary.campaign + (again.result.summary.dedup ? "" : "-labeled");
        const bool same = specmult::to_jsonl(again.result) == first[key];
        std::printf("    rerun %s: %s, %.2f s\n", key.c_str(), same ? "identical" : "DIFFERENT", again.seconds);
        identical = identical && same;
    }
    report(10, identical, "every campaign rerun with the same configuration is byte-identical");

    return failures == 0 ? 0 : 1;
}
