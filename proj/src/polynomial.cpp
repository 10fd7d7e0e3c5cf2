#include "specmult/polynomial.hpp"

#include "specmult/scalar.hpp"

#include <nlohmann/json.hpp>

#include <numeric>
#include <sstream>

namespace specmult {

RatPolynomial to_rational(const IntPolynomial& p) {
    std::vector<mpq_class> c;
    c.reserve(p.coefficients().size());
    for (const auto& z : p.coefficients()) c.emplace_back(z);
    return RatPolynomial(std::move(c));
}

IntPolynomial to_integer(const RatPolynomial& p) {
    std::vector<mpz_class> c;
    c.reserve(p.coefficients().size());
    for (const auto& q : p.coefficients()) {
        if (q.get_den() != 1) throw Error(ErrorKind::InvalidArgument, "polynomial has a non-integer coefficient");
        c.emplace_back(q.get_num());
    }
    return IntPolynomial(std::move(c));
}

IntPolynomial primitive_part(const RatPolynomial& p) {
    if (p.is_zero()) return {};
    mpz_class lcm = 1;
    for (const auto& q : p.coefficients()) mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), q.get_den_mpz_t());
    std::vector<mpz_class> c;
    mpz_class content = 0;
    for (const auto& q : p.coefficients()) {
        mpz_class z = q.get_num() * (lcm / q.get_den());
        mpz_gcd(content.get_mpz_t(), content.get_mpz_t(), z.get_mpz_t());
        c.push_back(std::move(z));
    }
    if (sgn(p.leading()) < 0) content = -content;
    for (auto& z : c) z /= content;
    return IntPolynomial(std::move(c));
}

RatPolynomial make_monic(const RatPolynomial& p) {
    if (p.is_zero()) return p;
    return mpq_class(1 / p.leading()) * p;
}

std::pair<RatPolynomial, RatPolynomial> divmod(const RatPolynomial& p, const RatPolynomial& d) {
    if (d.is_zero()) throw Error(ErrorKind::InvalidArgument, "polynomial division by zero");
    if (p.degree() < d.degree()) return {RatPolynomial{}, p};
    std::vector<mpq_class> r = p.coefficients();
    const auto& dc = d.coefficients();
    const std::size_t dd = dc.size() - 1;
    std::vector<mpq_class> q(r.size() - dd);
    for (std::size_t k = q.size(); k-- > 0;) {
        const mpq_class f = r[k + dd] / dc[dd];
        q[k] = f;
        if (sgn(f) == 0) continue;
        for (std::size_t j = 0; j <= dd; ++j) r[k + j] -= f * dc[j];
    }
    r.resize(dd);
    return {RatPolynomial(std::move(q)), RatPolynomial(std::move(r))};
}

namespace {

template <class T>
std::optional<Polynomial<T>> divide_monic(const Polynomial<T>& p, const Polynomial<T>& mu) {
    if (!mu.is_monic()) throw Error(ErrorKind::InvalidArgument, "divisor must be monic");
    if (p.is_zero()) return Polynomial<T>{};
    if (p.degree() < mu.degree()) return std::nullopt;
    std::vector<T> r = p.coefficients();
    const auto& mc = mu.coefficients();
    const std::size_t dd = mc.size() - 1;
    std::vector<T> q(r.size() - dd);
    for (std::size_t k = q.size(); k-- > 0;) {
        const T f = r[k + dd];
        q[k] = f;
        if (sgn(f) == 0) continue;
        for (std::size_t j = 0; j < dd; ++j) r[k + j] -= f * mc[j];
        r[k + dd] = 0;
    }
    for (std::size_t j = 0; j < dd; ++j) {
        if (sgn(r[j]) != 0) return std::nullopt;
    }
    return Polynomial<T>(std::move(q));
}

template <class T>
std::size_t multiplicity_monic(Polynomial<T> p, const Polynomial<T>& mu) {
    if (!mu.is_monic() || mu.degree() < 1) throw Error(ErrorKind::InvalidArgument, "mu must be monic and nonconstant");
    if (p.is_zero()) throw Error(ErrorKind::InvalidArgument, "multiplicity in the zero polynomial is unbounded");
    std::size_t m = 0;
    while (p.degree() >= mu.degree()) {
        auto q = divide_monic(p, mu);
        if (!q) break;
        p = std::move(*q);
        ++m;
    }
    return m;
}

} // namespace

std::optional<IntPolynomial> divide_exact(const IntPolynomial& p, const IntPolynomial& mu) { return divide_monic(p, mu); }
std::optional<RatPolynomial> divide_exact(const RatPolynomial& p, const RatPolynomial& mu) { return divide_monic(p, mu); }

std::size_t multiplicity_via_minpoly(const IntPolynomial& p, const IntPolynomial& mu) { return multiplicity_monic(p, mu); }
std::size_t multiplicity_via_minpoly(const RatPolynomial& p, const RatPolynomial& mu) { return multiplicity_monic(p, mu); }

RatPolynomial gcd(const RatPolynomial& a, const RatPolynomial& b) {
    RatPolynomial x = make_monic(a);
    RatPolynomial y = make_monic(b);
    while (!y.is_zero()) {
        RatPolynomial r = make_monic(divmod(x, y).second);
        x = std::move(y);
        y = std::move(r);
    }
    return x;
}

std::vector<std::pair<RatPolynomial, std::size_t>> squarefree_decomposition(const RatPolynomial& p) {
    std::vector<std::pair<RatPolynomial, std::size_t>> out;
    if (p.degree() < 1) return out;
    const RatPolynomial f = make_monic(p);
    const RatPolynomial fp = f.derivative();
    const RatPolynomial a0 = gcd(f, fp);
    RatPolynomial b = divmod(f, a0).first;
    RatPolynomial c = divmod(fp, a0).first;
    RatPolynomial d = c - b.derivative();
    for (std::size_t i = 1; b.degree() >= 1; ++i) {
        RatPolynomial a = gcd(b, d);
        b = divmod(b, a).first;
        c = divmod(d, a).first;
        d = c - b.derivative();
        if (a.degree() >= 1) out.emplace_back(std::move(a), i);
    }
    return out;
}

int sign_at(const RatPolynomial& p, const mpq_class& x) { return sgn(p.evaluate(x)); }

namespace {

std::vector<RatPolynomial> sturm_sequence(const RatPolynomial& p) {
    std::vector<RatPolynomial> seq{p, p.derivative()};
    while (seq.back().degree() > 0) {
        RatPolynomial r = divmod(seq[seq.size() - 2], seq.back()).second;
        if (r.is_zero()) break;
        // Only positive rescaling is allowed here.
        r = mpq_class(-1 / abs(r.leading())) * r;
        seq.push_back(std::move(r));
    }
    return seq;
}

std::size_t sign_variations(const std::vector<RatPolynomial>& seq, const mpq_class& x) {
    std::size_t changes = 0;
    int last = 0;
    for (const auto& q : seq) {
        const int s = sign_at(q, x);
        if (s == 0) continue;
        if (last != 0 && s != last) ++changes;
        last = s;
    }
    return changes;
}

mpq_class cauchy_bound(const RatPolynomial& p) {
    mpq_class m = 0;
    for (std::size_t k = 0; k + 1 < p.coefficients().size(); ++k) {
        mpq_class r = abs(p.coefficients()[k] / p.leading());
        if (r > m) m = r;
    }
    return m + 1;
}

} // namespace

std::size_t count_real_roots(const RatPolynomial& p, const mpq_class& a, const mpq_class& b) {
    if (p.is_zero()) throw Error(ErrorKind::InvalidArgument, "the zero polynomial has every number as a root");
    if (!(a < b)) return 0;
    const auto seq = sturm_sequence(p);
    return sign_variations(seq, a) - sign_variations(seq, b);
}

std::vector<RootInterval> isolate_real_roots(const RatPolynomial& p) {
    if (p.is_zero()) throw Error(ErrorKind::InvalidArgument, "the zero polynomial has every number as a root");
    std::vector<RootInterval> out;
    if (p.degree() < 1) return out;
    const RatPolynomial sqf = divmod(p, gcd(p, p.derivative())).first;
    const auto seq = sturm_sequence(sqf);
    const mpq_class bound = cauchy_bound(sqf);

    struct Pending {
        mpq_class a, b;
        std::size_t va, vb;
    };
    // Depth-first, left half first, so roots come out ascending.
    std::vector<Pending> stack{{-bound, bound, sign_variations(seq, -bound), sign_variations(seq, bound)}};
    while (!stack.empty()) {
        Pending cur = std::move(stack.back());
        stack.pop_back();
        const std::size_t count = cur.va - cur.vb;
        if (count == 0) continue;
        if (count == 1) {
            if (sign_at(sqf, cur.b) == 0) {
                out.push_back({cur.b, cur.b});
                continue;
            }
            if (sign_at(sqf, cur.a) != 0) {
                out.push_back({cur.a, cur.b});
                continue;
            }
        }
        mpq_class mid = (cur.a + cur.b) / 2;
        const std::size_t vm = sign_variations(seq, mid);
        stack.push_back({mid, cur.b, vm, cur.vb});
        stack.push_back({cur.a, mid, cur.va, vm});
    }
    return out;
}

void refine_root(const RatPolynomial& p, RootInterval& r, const mpq_class& width) {
    if (r.exact()) return;
    int slo = sign_at(p, r.lo);
    while (r.hi - r.lo > width) {
        mpq_class mid = (r.lo + r.hi) / 2;
        const int s = sign_at(p, mid);
        if (s == 0) {
            r.lo = mid;
            r.hi = mid;
            return;
        }
        if (s == slo) {
            r.lo = std::move(mid);
        } else {
            r.hi = std::move(mid);
        }
    }
}

mpz_class integral_scale(const RatPolynomial& monic) {
    mpz_class l = 1;
    for (const auto& q : monic.coefficients()) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), q.get_den_mpz_t());
    return l;
}

IntPolynomial cyclotomic(unsigned m) {
    if (m == 0) throw Error(ErrorKind::ParameterOutOfRange, "cyclotomic index must be positive");
    // x^m - 1 = prod_{d | m} Phi_d
    IntPolynomial p = IntPolynomial::monomial(m) - IntPolynomial::constant(1);
    for (unsigned d = 1; d < m; ++d) {
        if (m % d != 0) continue;
        auto q = divide_exact(p, cyclotomic(d));
        if (!q) throw Error(ErrorKind::InvalidArgument, "cyclotomic division failed");
        p = std::move(*q);
    }
    return p;
}

IntPolynomial min_poly_2cos_primitive(unsigned m) {
    if (m == 0) throw Error(ErrorKind::ParameterOutOfRange, "m must be positive");
    if (m == 1) return IntPolynomial{-2, 1};
    if (m == 2) return IntPolynomial{2, 1};
    // z^d psi(z + 1/z) = Phi_m(z), d = deg(Phi_m) / 2; peel psi off from the top.
    std::vector<mpz_class> r = cyclotomic(m).coefficients();
    const std::size_t d = (r.size() - 1) / 2;
    std::vector<mpz_class> psi(d + 1);
    for (std::size_t j = d + 1; j-- > 0;) {
        const mpz_class c = r[d + j];
        psi[j] = c;
        mpz_class binom = 1;
        for (std::size_t t = 0; t <= j; ++t) {
            r[d + j - 2 * t] -= c * binom;
            binom = binom * static_cast<unsigned long>(j - t) / static_cast<unsigned long>(t + 1);
        }
    }
    for (const auto& x : r) {
        if (x != 0) throw Error(ErrorKind::InvalidArgument, "cyclotomic polynomial is not palindromic");
    }
    return IntPolynomial(std::move(psi));
}

IntPolynomial min_poly_2cos(unsigned n, unsigned k) {
    if (n < 3 || k < 1 || k > (n + 1) / 2 - 1) {
        throw Error(ErrorKind::ParameterOutOfRange, "need n >= 3 and 1 <= k <= ceil(n/2) - 1");
    }
    return min_poly_2cos_primitive(n / std::gcd(n, k));
}

namespace {

template <class T>
std::string poly_string(const Polynomial<T>& p) {
    if (p.is_zero()) return "0";
    std::string out;
    const auto& c = p.coefficients();
    for (std::size_t k = c.size(); k-- > 0;) {
        if (c[k] == 0) continue;
        T mag = c[k];
        const bool neg = sgn(mag) < 0;
        if (neg) mag = -mag;
        if (out.empty()) out += neg ? "-" : "";
        else out += neg ? " - " : " + ";
        const bool unit = mag == 1;
        if (!unit || k == 0) out += mag.get_str();
        if (k > 0) {
            if (!unit) out += '*';
            out += 'x';
            if (k > 1) out += '^' + std::to_string(k);
        }
    }
    return out;
}

template <class T>
nlohmann::json poly_json(const Polynomial<T>& p) {
    nlohmann::json out = nlohmann::json::array();
    for (const auto& c : p.coefficients()) {
        if constexpr (std::is_same_v<T, mpz_class>) {
            if (c.fits_slong_p()) out.push_back(c.get_si());
            else out.push_back(c.get_str());
        } else {
            if (c.get_den() == 1 && c.get_num().fits_slong_p()) out.push_back(c.get_num().get_si());
            else out.push_back(c.get_str());
        }
    }
    return out;
}

} // namespace

std::string to_string(const IntPolynomial& p) { return poly_string(p); }
std::string to_string(const RatPolynomial& p) { return poly_string(p); }

RatPolynomial parse_coefficients(std::string_view text) {
    std::vector<mpq_class> c;
    std::string item;
    std::istringstream in{std::string(text)};
    while (std::getline(in, item, ',')) c.push_back(parse_rational(item));
    if (c.empty()) throw Error(ErrorKind::Parse, "empty coefficient list");
    return RatPolynomial(std::move(c));
}

nlohmann::json to_json(const IntPolynomial& p) { return poly_json(p); }
nlohmann::json to_json(const RatPolynomial& p) { return poly_json(p); }

} // namespace specmult
