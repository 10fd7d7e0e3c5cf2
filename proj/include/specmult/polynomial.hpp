#pragma once

#include "specmult/errors.hpp"

#include <gmpxx.h>
#include <nlohmann/json_fwd.hpp>

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace specmult {

/// Dense univariate polynomial, coefficients lowest degree first. The
/// coefficient vector never carries trailing zeros, so the zero polynomial
/// is the empty vector with degree -1.
template <class T>
class Polynomial {
public:
    Polynomial() = default;
    explicit Polynomial(std::vector<T> coefficients) : c_(std::move(coefficients)) { trim(); }
    Polynomial(std::initializer_list<T> coefficients) : c_(coefficients) { trim(); }

    static Polynomial constant(T value) { return Polynomial(std::vector<T>{std::move(value)}); }
    static Polynomial monomial(std::size_t k, T value = T(1)) {
        std::vector<T> c(k + 1);
        c[k] = std::move(value);
        return Polynomial(std::move(c));
    }
    /// x - r
    static Polynomial linear_root(const T& r) { return Polynomial(std::vector<T>{T(-r), T(1)}); }

    long degree() const noexcept { return static_cast<long>(c_.size()) - 1; }
    bool is_zero() const noexcept { return c_.empty(); }
    const std::vector<T>& coefficients() const noexcept { return c_; }
    T coeff(std::size_t k) const { return k < c_.size() ? c_[k] : T(0); }
    const T& leading() const { return c_.back(); }
    bool is_monic() const { return !c_.empty() && c_.back() == 1; }

    template <class V>
    V evaluate(const V& x) const {
        V acc(0);
        for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + V(*it);
        return acc;
    }

    double evaluate_double(double x) const {
        double acc = 0.0;
        for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + to_double(*it);
        return acc;
    }

    Polynomial& operator+=(const Polynomial& o) {
        if (o.c_.size() > c_.size()) c_.resize(o.c_.size());
        for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] += o.c_[i];
        trim();
        return *this;
    }
    Polynomial& operator-=(const Polynomial& o) {
        if (o.c_.size() > c_.size()) c_.resize(o.c_.size());
        for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] -= o.c_[i];
        trim();
        return *this;
    }
    friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
    friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
    friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
        if (a.is_zero() || b.is_zero()) return {};
        std::vector<T> c(a.c_.size() + b.c_.size() - 1);
        for (std::size_t i = 0; i < a.c_.size(); ++i) {
            if (a.c_[i] == 0) continue;
            for (std::size_t j = 0; j < b.c_.size(); ++j) c[i + j] += a.c_[i] * b.c_[j];
        }
        return Polynomial(std::move(c));
    }
    friend Polynomial operator*(const T& s, const Polynomial& p) {
        std::vector<T> c(p.c_);
        for (auto& x : c) x *= s;
        return Polynomial(std::move(c));
    }
    friend bool operator==(const Polynomial& a, const Polynomial& b) { return a.c_ == b.c_; }

    Polynomial derivative() const {
        std::vector<T> c;
        for (std::size_t k = 1; k < c_.size(); ++k) c.push_back(c_[k] * T(static_cast<long>(k)));
        return Polynomial(std::move(c));
    }

private:
    static double to_double(const T& v) { return v.get_d(); }
    void trim() {
        while (!c_.empty() && c_.back() == 0) c_.pop_back();
    }

    std::vector<T> c_;
};

using IntPolynomial = Polynomial<mpz_class>;
using RatPolynomial = Polynomial<mpq_class>;

RatPolynomial to_rational(const IntPolynomial& p);
/// Throws Error(InvalidArgument) if a coefficient is not an integer.
IntPolynomial to_integer(const RatPolynomial& p);
/// Positive multiple with coprime integer coefficients and positive leading term.
IntPolynomial primitive_part(const RatPolynomial& p);
RatPolynomial make_monic(const RatPolynomial& p);

/// Quotient and remainder over the rationals. Throws Error(InvalidArgument)
/// on a zero divisor.
std::pair<RatPolynomial, RatPolynomial> divmod(const RatPolynomial& p, const RatPolynomial& d);

/// Exact quotient p / mu for monic mu, or nothing if the remainder is nonzero.
std::optional<IntPolynomial> divide_exact(const IntPolynomial& p, const IntPolynomial& mu);
std::optional<RatPolynomial> divide_exact(const RatPolynomial& p, const RatPolynomial& mu);

/// Largest m with mu^m | p. mu must be monic and nonconstant, p nonzero
/// (Error(InvalidArgument) otherwise).
std::size_t multiplicity_via_minpoly(const IntPolynomial& p, const IntPolynomial& mu);
std::size_t multiplicity_via_minpoly(const RatPolynomial& p, const RatPolynomial& mu);

/// Monic gcd (zero if both are zero).
RatPolynomial gcd(const RatPolynomial& a, const RatPolynomial& b);

/// Yun's algorithm: p = c * prod a_i^i with each a_i monic, squarefree and
/// pairwise coprime. Returns the nonconstant a_i with their exponent i.
std::vector<std::pair<RatPolynomial, std::size_t>> squarefree_decomposition(const RatPolynomial& p);

/// Sign of p at an exact rational point.
int sign_at(const RatPolynomial& p, const mpq_class& x);

/// Isolating interval of a real root: either the open interval (lo, hi) with
/// p(lo) p(hi) < 0 and exactly one root inside, or lo == hi == the root.
struct RootInterval {
    mpq_class lo;
    mpq_class hi;
    bool exact() const { return lo == hi; }
};

/// Number of distinct real roots of p in (a, b], by Sturm's theorem.
std::size_t count_real_roots(const RatPolynomial& p, const mpq_class& a, const mpq_class& b);

/// Isolating intervals for all real roots of a squarefree p, ascending.
std::vector<RootInterval> isolate_real_roots(const RatPolynomial& p);

/// Halves the interval (keeping a sign change) until hi - lo <= width.
void refine_root(const RatPolynomial& p, RootInterval& r, const mpq_class& width);

/// A positive integer L with L^d p(x / L) integral, for monic p of degree d
/// (the lcm of the coefficient denominators).
mpz_class integral_scale(const RatPolynomial& monic);

/// Cyclotomic polynomial Phi_m, m >= 1.
IntPolynomial cyclotomic(unsigned m);

/// Minimal polynomial of 2cos(2 k pi / n) for n >= 3, 1 <= k <= ceil(n/2) - 1.
/// Throws Error(ParameterOutOfRange).
IntPolynomial min_poly_2cos(unsigned n, unsigned k);

/// Minimal polynomial of 2cos(2 pi / m) for any m >= 1 (m = 1, 2 give x - 2, x + 2).
IntPolynomial min_poly_2cos_primitive(unsigned m);

/// "x^3 - 3*x - 2"
std::string to_string(const IntPolynomial& p);
std::string to_string(const RatPolynomial& p);

/// Comma-separated coefficients, lowest degree first: "-1,1,1" is x^2 + x - 1.
/// Rational coefficients ("1/2") are accepted. Throws Error(Parse).
RatPolynomial parse_coefficients(std::string_view text);

/// Array of coefficients lowest degree first; integers that fit in 64 bits
/// are emitted as numbers, everything else as decimal strings.
nlohmann::json to_json(const IntPolynomial& p);
nlohmann::json to_json(const RatPolynomial& p);

} // namespace specmult
