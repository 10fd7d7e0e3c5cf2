#include "doctest.h"

#include "specmult/families.hpp"
#include "specmult/spectra.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <random>

using namespace specmult;

namespace {

// Leibniz expansion over all permutations; only for n <= 7.
GaussianRational leibniz_det(const DenseMatrix<GaussianRational>& m) {
    const std::size_t n = m.dim();
    std::vector<std::size_t> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    GaussianRational total;
    do {
        std::size_t inversions = 0;
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = i + 1; j < n; ++j) inversions += perm[i] > perm[j];
        }
        GaussianRational term(inversions % 2 ? -1 : 1);
        for (std::size_t i = 0; i < n && !term.is_zero(); ++i) term *= m(i, perm[i]);
        total += term;
    } while (std::next_permutation(perm.begin(), perm.end()));
    return total;
}

GaussianRational det_x_minus(const ExactMatrix& b, const mpq_class& x) {
    DenseMatrix<GaussianRational> m(b.dim());
    for (std::size_t i = 0; i < b.dim(); ++i) {
        for (std::size_t j = 0; j < b.dim(); ++j) m(i, j) = -b(i, j);
        m(i, i) += GaussianRational(x);
    }
    return leibniz_det(m);
}

// det(xI - B) by Lagrange interpolation through x = 0..n.
RatPolynomial brute_force_charpoly(const ExactMatrix& b) {
    const std::size_t n = b.dim();
    RatPolynomial out;
    for (std::size_t k = 0; k <= n; ++k) {
        const GaussianRational y = det_x_minus(b, static_cast<long>(k));
        REQUIRE(y.is_real());
        RatPolynomial basis = RatPolynomial::constant(1);
        mpq_class denom = 1;
        for (std::size_t j = 0; j <= n; ++j) {
            if (j == k) continue;
            basis = basis * RatPolynomial{mpq_class(-static_cast<long>(j)), 1};
            denom *= static_cast<long>(k) - static_cast<long>(j);
        }
        out += mpq_class(y.re / denom) * basis;
    }
    return out;
}

ExactMatrix remark_h1() {
    return ExactMatrix(parse_matrix("4\n-10 -10 -10 8\n-10 -3 -5 0\n-10 -5 -3 0\n8 0 0 10\n"),
                       Graph(4, {{0, 1}, {0, 2}, {1, 2}, {0, 3}}));
}

ExactMatrix remark_h2() {
    return ExactMatrix(parse_matrix("6\n"
                                    "0 1 1 8 0 0\n"
                                    "1 0 9 0 0 0\n"
                                    "1 9 0 0 0 0\n"
                                    "8 0 0 0 4 0\n"
                                    "0 0 0 4 0 1\n"
                                    "0 0 0 0 1 0\n"),
                       Graph(6, {{0, 1}, {0, 2}, {1, 2}, {0, 3}, {3, 4}, {4, 5}}));
}

ExactMatrix modified_c4() {
    DenseMatrix<GaussianRational> m = adjacency_exact(families::cycle(4)).entries();
    m(0, 1) = GaussianRational(2);
    m(1, 0) = GaussianRational(2);
    return ExactMatrix(m, families::cycle(4));
}

} // namespace

TEST_CASE("exact multiplicities from the worked examples") {
    CHECK(multiplicity_exact_rational(remark_h1(), 2).multiplicity == 2);
    CHECK(multiplicity_exact_rational(principal_submatrix(remark_h1(), VertexSet{0, 1, 2}).matrix, 2).multiplicity == 1);
    CHECK(multiplicity_exact_rational(remark_h2(), -9).multiplicity == 2);
    CHECK(multiplicity_exact_rational(principal_submatrix(remark_h2(), VertexSet{0, 1, 2}).matrix, -9).multiplicity == 1);
    CHECK(multiplicity_exact_rational(principal_submatrix(remark_h2(), VertexSet{4, 5}).matrix, -9).multiplicity == 0);
    const auto c4 = multiplicity_exact_rational(adjacency_exact(families::cycle(4)), 0);
    CHECK(c4.multiplicity == 2);
    CHECK(c4.method == Method::ExactRank);
    CHECK(c4.tolerance == 0.0);
    for (long l = -3; l <= 3; ++l) CHECK(multiplicity_exact_rational(modified_c4(), l).multiplicity <= 1);
    // Every eigenvalue of the modified C4, rational or not, is simple.
    const auto spec = certify_spectrum(modified_c4());
    REQUIRE(spec.complete);
    for (const auto& e : spec.eigenvalues) CHECK(e.multiplicity == 1);
}

TEST_CASE("characteristic polynomials") {
    CHECK(char_poly_exact(adjacency_exact(families::path(2))) == RatPolynomial{-1, 0, 1});
    CHECK(char_poly_exact(adjacency_exact(Graph(1))) == RatPolynomial{0, 1});
    CHECK(char_poly_exact(adjacency_exact(Graph(0))) == RatPolynomial{1});

    const auto c3 = adjacency_exact(families::cycle(3));
    CHECK(brute_force_charpoly(c3) == RatPolynomial{-2, -3, 0, 1});
    CHECK(char_poly_exact(c3) == brute_force_charpoly(c3));

    const auto c5 = adjacency_exact(families::cycle(5));
    const RatPolynomial expected = brute_force_charpoly(c5);
    CHECK(char_poly_exact(c5) == expected);
    CHECK(char_poly_hessenberg(c5) == expected);
    CHECK(char_poly_berkowitz(c5) == expected);
    // (x - 2)(x^2 + x - 1)^2
    CHECK(expected == RatPolynomial{-2, 1} * RatPolynomial{-1, 1, 1} * RatPolynomial{-1, 1, 1});
    CHECK(multiplicity_via_minpoly(to_integer(expected), IntPolynomial{-1, 1, 1}) == 2);
}

TEST_CASE("property: both charpoly routes agree with brute force") {
    std::mt19937_64 rng(101);
    for (int trial = 0; trial < 60; ++trial) {
        const std::size_t n = 1 + rng() % 6;
        std::vector<Edge> edges;
        for (Vertex u = 0; u < n; ++u) {
            for (Vertex v = u + 1; v < n; ++v) {
                if (rng() % 2) edges.push_back(Edge{u, v});
            }
        }
        const ExactMatrix b = random_in_S(Graph(n, edges), rng());
        const RatPolynomial ref = brute_force_charpoly(b);
        CHECK(char_poly_hessenberg(b) == ref);
        CHECK(char_poly_berkowitz(b) == ref);
        CHECK(char_poly_exact(b) == ref);
    }
}

TEST_CASE("property: charpoly at rational points matches elimination determinants") {
    std::mt19937_64 rng(103);
    for (int trial = 0; trial < 100; ++trial) {
        const std::size_t n = 1 + rng() % 9;
        const Graph g = families::path(n);
        const ExactMatrix b = random_in_S(g, rng());
        const RatPolynomial p = char_poly_exact(b);
        mpq_class x(static_cast<long>(rng() % 21) - 10, 1 + static_cast<long>(rng() % 4));
        x.canonicalize();
        DenseMatrix<GaussianRational> m(n);
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = 0; j < n; ++j) m(i, j) = b(i, j);
            m(i, i).re -= x;
        }
        // det(B - xI) = (-1)^n det(xI - B)
        const GaussianRational d = determinant_exact(m);
        CHECK(d.is_real());
        CHECK(d.re == (n % 2 ? -1 : 1) * p.evaluate(x));
    }
}

TEST_CASE("integral route survives overflow") {
    DenseMatrix<GaussianRational> m(12);
    for (std::size_t i = 0; i < 12; ++i) {
        for (std::size_t j = 0; j < 12; ++j) m(i, j) = GaussianRational(i == j ? 0 : 1000000007L);
    }
    Graph k12(12);
    std::vector<Edge> edges;
    for (Vertex u = 0; u < 12; ++u) {
        for (Vertex v = u + 1; v < 12; ++v) edges.push_back(Edge{u, v});
    }
    const ExactMatrix b(m, Graph(12, edges));
    CHECK(char_poly_exact(b) == char_poly_hessenberg(b));
}

TEST_CASE("numeric eigenvalues") {
    const auto p3 = eigenvalues_numeric(adjacency_approx(families::path(3)));
    REQUIRE(p3.values.size() == 3);
    CHECK(std::abs(p3.values[0] + std::sqrt(2.0)) < 1e-12);
    CHECK(std::abs(p3.values[1]) < 1e-12);
    CHECK(std::abs(p3.values[2] - std::sqrt(2.0)) < 1e-12);

    DenseMatrix<ApproxComplex> d(3);
    d(0, 0) = 1.0;
    d(1, 1) = 2.0;
    d(2, 2) = 3.0;
    const auto diag = eigenvalues_numeric(ApproxMatrix(d, Graph(3)));
    CHECK(diag.values == std::vector<double>{1.0, 2.0, 3.0});

    const auto c6 = eigenvalues_numeric(adjacency_approx(families::cycle(6)));
    const std::vector<double> expected{-2, -1, -1, 1, 1, 2};
    for (std::size_t i = 0; i < 6; ++i) CHECK(std::abs(c6.values[i] - expected[i]) < 1e-12);
    CHECK(c6.residual_bound > 0.0);
    CHECK(c6.residual_bound < 1e-12);
}

TEST_CASE("numeric multiplicities") {
    const auto c6 = adjacency_approx(families::cycle(6));
    const auto r = multiplicity_numeric(c6, 1.0, 1e-8);
    CHECK(r.multiplicity == 2);
    CHECK(r.method == Method::NumericCluster);
    CHECK(r.tolerance == 1e-8);
    CHECK(multiplicity_numeric(adjacency_approx(families::path(4)), 1.0, 1e-8).multiplicity == 0);
    try {
        multiplicity_numeric(c6, 1.0 + 1.5e-8, 1e-8);
        FAIL("expected an ambiguous cluster");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::AmbiguousCluster);
    }
    CHECK_THROWS_AS(multiplicity_numeric(c6, 1.0, 0.0), Error);
}

TEST_CASE("property: the largest eigenvalue of a connected nonnegative pattern is simple") {
    std::mt19937_64 rng(107);
    for (int trial = 0; trial < 100; ++trial) {
        const std::size_t n = 2 + rng() % 8;
        std::vector<Edge> edges;
        for (Vertex v = 1; v < n; ++v) edges.push_back(Edge{static_cast<Vertex>(rng() % v), v});
        for (int k = 0; k < 3; ++k) {
            const Vertex a = rng() % n;
            const Vertex b = rng() % n;
            if (a != b && std::find(edges.begin(), edges.end(), make_edge(a, b)) == edges.end()) edges.push_back(make_edge(a, b));
        }
        const auto b = adjacency_approx(Graph(n, edges));
        const auto s = eigenvalues_numeric(b);
        CHECK(multiplicity_numeric(s, s.values.back(), 1e-8).multiplicity == 1);
    }
}

TEST_CASE("property: exact and numeric multiplicities agree") {
    std::mt19937_64 rng(109);
    int compared = 0;
    int positive = 0;
    for (int trial = 0; trial < 500; ++trial) {
        const std::size_t n = 1 + rng() % 10;
        std::vector<Edge> edges;
        for (Vertex u = 0; u < n; ++u) {
            for (Vertex v = u + 1; v < n; ++v) {
                if (rng() % 3 == 0) edges.push_back(Edge{u, v});
            }
        }
        ExactMatrix b = random_in_S(Graph(n, edges), rng());
        const mpq_class lambda(static_cast<long>(rng() % 21) - 10, 1 + static_cast<long>(rng() % 3));
        if (trial % 2 == 0) b = plant_eigenvalue(b, lambda, rng() % n);
        const auto exact = multiplicity_exact_rational(b, lambda);
        try {
            const auto numeric = multiplicity_numeric(to_approx(b), lambda.get_d(), 1e-8);
            CHECK(numeric.multiplicity == exact.multiplicity);
            ++compared;
            positive += exact.multiplicity > 0;
        } catch (const Error& e) {
            CHECK(e.kind() == ErrorKind::AmbiguousCluster);
        }
    }
    CHECK(compared > 400);
    CHECK(positive > 100);
}

TEST_CASE("property: cluster multiplicities sum to n") {
    std::mt19937_64 rng(113);
    for (int trial = 0; trial < 100; ++trial) {
        const std::size_t n = 1 + rng() % 10;
        const auto s = eigenvalues_numeric(to_approx(random_in_S(families::path(n), rng())));
        std::size_t total = 0;
        for (const auto& c : cluster_values(s.values, 1e-8)) total += c.count;
        CHECK(total == n);
    }
}

TEST_CASE("property: weighted paths have simple spectra") {
    std::mt19937_64 rng(127);
    for (int trial = 0; trial < 200; ++trial) {
        const std::size_t n = 1 + rng() % 12;
        const ExactMatrix b = random_in_S(families::path(n), rng());
        const RatPolynomial p = char_poly_exact(b);
        // Squarefree iff every root is simple.
        CHECK(gcd(p, p.derivative()).degree() == 0);
        const auto spec = certify_spectrum(b);
        if (spec.complete) {
            for (const auto& e : spec.eigenvalues) CHECK(e.multiplicity <= 1);
        }
    }
}

TEST_CASE("property: eigenvalues of principal submatrices interlace") {
    std::mt19937_64 rng(131);
    for (int trial = 0; trial < 100; ++trial) {
        const std::size_t n = 2 + rng() % 8;
        std::vector<Edge> edges;
        for (Vertex u = 0; u < n; ++u) {
            for (Vertex v = u + 1; v < n; ++v) {
                if (rng() % 2) edges.push_back(Edge{u, v});
            }
        }
        const ExactMatrix b = random_in_S(Graph(n, edges), rng());
        const Vertex drop = rng() % n;
        const auto full = eigenvalues_numeric(to_approx(b));
        const auto sub = eigenvalues_numeric(to_approx(principal_submatrix(b, VertexSet{drop}.complement(n)).matrix));
        const double slack = 2.0 * full.residual_bound + 2.0 * sub.residual_bound;
        for (std::size_t i = 0; i + 1 < n; ++i) {
            CHECK(full.values[i] <= sub.values[i] + slack);
            CHECK(sub.values[i] <= full.values[i + 1] + slack);
        }
    }
}

TEST_CASE("path spectrum membership") {
    CHECK(path_spectrum_membership(adjacency_exact(families::path(2)), Eigenvalue::rational(1)));
    CHECK(path_spectrum_membership(adjacency_exact(families::path(3)), Eigenvalue::rational(0)));
    CHECK_FALSE(path_spectrum_membership(adjacency_exact(families::path(3)), Eigenvalue::rational(1)));
    CHECK(path_spectrum_membership(adjacency_exact(families::path(5)), Eigenvalue::rational(-1)));
    CHECK_FALSE(path_spectrum_membership(adjacency_exact(families::path(4)), Eigenvalue::rational(-1)));
    // P_4 eigenvalues are the roots of x^2 - x - 1 and x^2 + x - 1.
    CHECK(path_spectrum_membership(adjacency_exact(families::path(4)),
                                   Eigenvalue::algebraic(IntPolynomial{-1, -1, 1}, 1.618)));
    CHECK_FALSE(path_spectrum_membership(adjacency_exact(families::path(3)),
                                         Eigenvalue::algebraic(IntPolynomial{-1, -1, 1}, 1.618)));
    // Relabeled path: membership follows the path order, not the ids.
    const Graph scrambled = relabel(families::path(3), std::vector<Vertex>{1, 2, 0});
    CHECK(path_spectrum_membership(adjacency_exact(scrambled), Eigenvalue::algebraic(IntPolynomial{-2, 0, 1}, 1.414)));
    CHECK_THROWS_AS(path_spectrum_membership(adjacency_exact(families::cycle(3)), Eigenvalue::rational(2)), Error);

    // The recurrence agrees with charpoly membership on random weighted paths.
    std::mt19937_64 rng(137);
    for (int trial = 0; trial < 100; ++trial) {
        const std::size_t n = 1 + rng() % 8;
        const ExactMatrix b = plant_eigenvalue(random_in_S(families::path(n), rng()), 1, rng() % n);
        const bool member = path_spectrum_membership(b, Eigenvalue::rational(1));
        CHECK(member == (multiplicity_exact_rational(b, 1).multiplicity > 0));
    }
}

TEST_CASE("certified spectra") {
    const auto c5 = certify_spectrum(adjacency_exact(families::cycle(5)));
    REQUIRE(c5.complete);
    REQUIRE(c5.eigenvalues.size() == 3);
    CHECK(c5.eigenvalues[0].lambda.kind() == Eigenvalue::Kind::Algebraic);
    CHECK(c5.eigenvalues[0].lambda.defining_polynomial() == RatPolynomial{-1, 1, 1});
    CHECK(c5.eigenvalues[0].lambda.is_minimal());
    CHECK(c5.numeric_consistent);
    CHECK(c5.eigenvalues[0].multiplicity == 2);
    CHECK(c5.eigenvalues[2].lambda.kind() == Eigenvalue::Kind::Rational);
    CHECK(c5.eigenvalues[2].lambda.rational_value() == 2);
    CHECK(c5.eigenvalues[2].multiplicity == 1);

    const auto h1 = certify_spectrum(remark_h1());
    REQUIRE(h1.complete);
    bool found = false;
    for (const auto& e : h1.eigenvalues) {
        if (e.lambda.kind() == Eigenvalue::Kind::Rational && e.lambda.rational_value() == 2) {
            found = true;
            CHECK(e.multiplicity == 2);
        }
    }
    CHECK(found);

    // Fractional and complex weights; exact ranks and numeric counts are
    // independent of the squarefree split.
    std::mt19937_64 rng(139);
    int consistent = 0;
    for (int trial = 0; trial < 100; ++trial) {
        const std::size_t n = 1 + rng() % 7;
        std::vector<Edge> edges;
        for (Vertex u = 0; u < n; ++u) {
            for (Vertex v = u + 1; v < n; ++v) {
                if (rng() % 2) edges.push_back(Edge{u, v});
            }
        }
        ExactMatrix b = random_in_S(Graph(n, edges), rng());
        if (trial % 2) b = plant_eigenvalue(plant_eigenvalue(b, 1, 0), 1, n - 1);
        const auto s = certify_spectrum(b);
        REQUIRE(s.complete);
        consistent += s.numeric_consistent;
        std::size_t total = 0;
        for (const auto& e : s.eigenvalues) {
            total += e.multiplicity;
            if (e.lambda.kind() == Eigenvalue::Kind::Rational) {
                CHECK(multiplicity_exact_rational(b, e.lambda.rational_value()).multiplicity == e.multiplicity);
            } else {
                CHECK(multiplicity_numeric(s.numeric, e.lambda.approx(), 1e-7).multiplicity == e.multiplicity);
            }
        }
        CHECK(total == n);
    }
    CHECK(consistent > 95);
}

TEST_CASE("descriptors without a minimal polynomial") {
    // (x^2 - 2)(x^2 - 3): the root sqrt 3 described by the product.
    const RatPolynomial q = RatPolynomial{-2, 0, 1} * RatPolynomial{-3, 0, 1};
    const auto l = Eigenvalue::isolated(q, RootInterval{mpq_class(17, 10), mpq_class(9, 5)}, 1.732);
    CHECK_FALSE(l.is_minimal());
    const RatPolynomial p = RatPolynomial{-3, 0, 1} * RatPolynomial{-3, 0, 1} * RatPolynomial{-2, 0, 1};
    CHECK(l.multiplicity_in(p) == 2);
    CHECK(l.multiplicity_in(RatPolynomial{-2, 0, 1}) == 0);
    CHECK(same_value(l, Eigenvalue::algebraic(IntPolynomial{-3, 0, 1}, 1.7)));
    CHECK_FALSE(same_value(l, Eigenvalue::algebraic(IntPolynomial{-3, 0, 1}, -1.7)));
    CHECK_THROWS_AS(Eigenvalue::isolated(q, RootInterval{mpq_class(1), mpq_class(2)}, 1.5), Error);
    CHECK(Eigenvalue::algebraic(IntPolynomial{-3, 0, 1}, -1.7).approx() < -1.73);
}

TEST_CASE("multiplicity probe") {
    const auto h2 = remark_h2();
    MultiplicityProbe probe(h2, Eigenvalue::rational(-9));
    CHECK(probe.whole() == 2);
    CHECK(probe.on(VertexSet{0, 1, 2}) == 1);
    CHECK(probe.on(VertexSet{4, 5}) == 0);
    CHECK(probe.on(VertexSet{}) == 0);
    CHECK(probe.without(VertexSet{3}) == multiplicity_exact_rational(principal_submatrix(h2, VertexSet{0, 1, 2, 4, 5}).matrix, -9).multiplicity);

    MultiplicityProbe c5(adjacency_exact(families::cycle(5)), Eigenvalue::algebraic(min_poly_2cos(5, 1), 0.618));
    CHECK(c5.whole() == 2);
    CHECK(c5.method() == Method::CharPolyDivision);
    CHECK(c5.without(VertexSet{0}) == 1);
    MultiplicityProbe frac(adjacency_exact(families::cycle(4)), Eigenvalue::rational(mpq_class(1, 2)));
    CHECK(frac.whole() == 0);
    MultiplicityProbe numeric(adjacency_exact(families::cycle(6)), Eigenvalue::numeric(1.0));
    CHECK(numeric.whole() == 2);
    CHECK(numeric.tolerance() == default_tolerance);
}

TEST_CASE("plant_eigenvalue") {
    std::mt19937_64 rng(149);
    for (int trial = 0; trial < 50; ++trial) {
        const Graph g = families::cstar(3 + rng() % 3, rng() % 3);
        const ExactMatrix b = random_in_S(g, rng());
        const mpq_class lambda(static_cast<long>(rng() % 7) - 3, 2);
        const ExactMatrix planted = plant_eigenvalue(b, lambda, 0);
        CHECK(validate_pattern(planted, g));
        if (!(planted == b)) CHECK(multiplicity_exact_rational(planted, lambda).multiplicity >= 1);
    }
}

TEST_CASE("json") {
    const auto j = to_json(multiplicity_exact_rational(adjacency_exact(families::cycle(4)), 0));
    CHECK(j["multiplicity"] == 2);
    CHECK(j["method"] == "ExactRank");
    CHECK(j["lambda"]["kind"] == "rational");
    const auto s = to_json(certify_spectrum(adjacency_exact(families::cycle(5))));
    CHECK(s["certified"] == true);
    CHECK(s["eigenvalues"].size() == 3);
}
