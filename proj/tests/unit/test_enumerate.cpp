#include "doctest.h"

#include "specmult/enumerate.hpp"
#include "specmult/families.hpp"
#include "specmult/structure.hpp"

#include <set>

using namespace specmult;
namespace fam = specmult::families;

namespace {

std::size_t count_labeled_trees(std::size_t n) {
    std::size_t c = 0;
    for_each_labeled_tree(n, [&](const Graph& t) {
        CHECK(is_tree(t));
        ++c;
        return true;
    });
    return c;
}

// Brute-force oracle: connectivity by DFS over every edge subset.
std::size_t brute_connected(std::size_t n) {
    std::size_t count = 0;
    const std::size_t pairs = n * (n - 1) / 2;
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << pairs); ++mask) {
        std::vector<std::vector<int>> adj(n);
        std::size_t bit = 0;
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = i + 1; j < n; ++j, ++bit) {
                if ((mask >> bit) & 1U) {
                    adj[i].push_back(static_cast<int>(j));
                    adj[j].push_back(static_cast<int>(i));
                }
            }
        }
        std::vector<int> stack{0};
        std::vector<char> seen(n, 0);
        seen[0] = 1;
        std::size_t reached = 1;
        while (!stack.empty()) {
            const int v = stack.back();
            stack.pop_back();
            for (int w : adj[v]) {
                if (!seen[w]) {
                    seen[w] = 1;
                    ++reached;
                    stack.push_back(w);
                }
            }
        }
        count += reached == n;
    }
    return count;
}

} // namespace

TEST_CASE("labeled trees follow Cayley's formula") {
    CHECK(count_labeled_trees(2) == 1);
    CHECK(count_labeled_trees(3) == 3);
    CHECK(count_labeled_trees(5) == 125);
    CHECK(count_labeled_trees(6) == 1296);
    CHECK_THROWS_AS(for_each_labeled_tree(10, [](const Graph&) { return true; }), Error);

    // Distinct edge sets.
    std::set<std::string> seen;
    for_each_labeled_tree(5, [&](const Graph& t) {
        seen.insert(serialize_graph(t));
        return true;
    });
    CHECK(seen.size() == 125);
}

TEST_CASE("unlabeled counts") {
    const std::size_t trees[] = {1, 1, 1, 2, 3, 6, 11, 23, 47, 106};
    for (std::size_t n = 1; n <= 10; ++n) CHECK(unlabeled_trees(n).size() == trees[n - 1]);
    CHECK_THROWS_AS(unlabeled_trees(11), Error);

    const std::size_t unicyclic[] = {1, 2, 5, 13, 33, 89, 240};
    for (std::size_t n = 3; n <= 9; ++n) {
        const auto gs = enumerate_unicyclic(n);
        CHECK(gs.size() == unicyclic[n - 3]);
        for (const Graph& g : gs) CHECK(cyclomatic_number(g) == 1);
    }

    const std::size_t connected[] = {1, 1, 2, 6, 21, 112, 853};
    for (std::size_t n = 1; n <= 7; ++n) CHECK(enumerate_connected(n).size() == connected[n - 1]);
}

TEST_CASE("connected labeled graphs match a brute count") {
    for (std::size_t n = 1; n <= 5; ++n) {
        std::size_t c = 0;
        for_each_connected_labeled(n, [&](const Graph& g) {
            ++c;
            return is_connected(g);
        });
        CHECK(c == brute_connected(n));
    }
    std::size_t c3 = 0, c4 = 0;
    for_each_connected_labeled(3, [&](const Graph&) { return ++c3, true; });
    for_each_connected_labeled(4, [&](const Graph&) { return ++c4, true; });
    CHECK(c3 == 4);
    CHECK(c4 == 38);
}

TEST_CASE("isomorphism") {
    // C6 relabelled against two triangles: same degrees, not isomorphic.
    const Graph c6 = fam::cycle(6);
    const Graph two = fam::disjoint_union(fam::cycle(3), fam::cycle(3));
    CHECK_FALSE(isomorphic(c6, two));
    const Graph shuffled(6, {{0, 3}, {3, 1}, {1, 4}, {4, 2}, {2, 5}, {5, 0}});
    CHECK(isomorphic(c6, shuffled));
    CHECK(invariant_key(c6) == invariant_key(shuffled));

    // The 3-prism and K_{3,3} are both 3-regular on six vertices.
    const Graph prism(6, {{0, 1}, {1, 2}, {2, 0}, {3, 4}, {4, 5}, {5, 3}, {0, 3}, {1, 4}, {2, 5}});
    const Graph k33(6, {{0, 3}, {0, 4}, {0, 5}, {1, 3}, {1, 4}, {1, 5}, {2, 3}, {2, 4}, {2, 5}});
    CHECK_FALSE(isomorphic(prism, k33));

    IsoClassSet set;
    CHECK(set.insert(c6));
    CHECK_FALSE(set.insert(shuffled));
    CHECK(set.insert(two));
    CHECK(set.size() == 2);
}

TEST_CASE("named shapes") {
    const auto cs = cstar_shapes(10);
    // m from 3 to 9, k from 0 to 9 - m.
    std::size_t expected = 0;
    for (std::size_t m = 3; m <= 9; ++m) expected += 10 - m;
    CHECK(cs.size() == expected);
    for (const auto& s : cs) CHECK(classify_family(s.graph).family == Family::CStarShape);

    const auto ti = theta_infinity_graphs(5);
    for (const auto& s : ti) {
        const Family f = classify_family(s.graph).family;
        CHECK_MESSAGE((f == Family::ThetaGraph || f == Family::InfinityGraph), s.name);
        CHECK(cyclomatic_number(s.graph) == 2);
    }
    CHECK_THROWS_AS(theta_infinity_graphs(9), Error);
}
