#include "specmult/spectra.hpp"

#include <Eigen/Eigenvalues>
#include <nlohmann/json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numeric>
#include <unordered_map>

namespace specmult {

// ---- Eigenvalue ----------------------------------------------------------------

namespace {

// Newton polish of an approximate root; keeps the input if iteration wanders.
double polish_root(const RatPolynomial& p, double x) {
    const RatPolynomial dp = p.derivative();
    double best = x;
    double best_val = std::abs(p.evaluate_double(x));
    for (int it = 0; it < 30 && best_val > 0.0; ++it) {
        const double d = dp.evaluate_double(x);
        if (d == 0.0) break;
        x -= p.evaluate_double(x) / d;
        const double v = std::abs(p.evaluate_double(x));
        if (!std::isfinite(x) || std::abs(x - best) > 1e-3 * (1.0 + std::abs(best))) break;
        if (v < best_val) {
            best = x;
            best_val = v;
        } else {
            break;
        }
    }
    return best;
}

} // namespace

Eigenvalue Eigenvalue::rational(mpq_class value) {
    value.canonicalize();
    Eigenvalue e;
    e.kind_ = Kind::Rational;
    e.approx_ = value.get_d();
    e.poly_ = RatPolynomial::linear_root(value);
    e.lo_ = value;
    e.hi_ = value;
    e.minimal_ = true;
    e.value_ = std::move(value);
    return e;
}

Eigenvalue Eigenvalue::algebraic(const RatPolynomial& minpoly, double approx) {
    if (!minpoly.is_monic() || minpoly.degree() < 1) {
        throw Error(ErrorKind::InvalidArgument, "minimal polynomial must be monic and nonconstant");
    }
    if (minpoly.degree() == 1) return rational(mpq_class(-minpoly.coeff(0)));
    auto roots = isolate_real_roots(minpoly);
    if (roots.empty()) throw Error(ErrorKind::InvalidArgument, "polynomial has no real root");
    const mpq_class width(1, 1 << 20);
    std::size_t best = 0;
    double best_gap = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < roots.size(); ++i) {
        refine_root(minpoly, roots[i], width);
        const double gap = std::abs(mpq_class((roots[i].lo + roots[i].hi) / 2).get_d() - approx);
        if (gap < best_gap) {
            best_gap = gap;
            best = i;
        }
    }
    if (roots[best].exact()) throw Error(ErrorKind::InvalidArgument, "minimal polynomial has a rational root");
    Eigenvalue e = isolated(minpoly, roots[best], approx, true);
    return e;
}

Eigenvalue Eigenvalue::algebraic(const IntPolynomial& minpoly, double approx) {
    return algebraic(to_rational(minpoly), approx);
}

Eigenvalue Eigenvalue::isolated(const RatPolynomial& q, const RootInterval& where, double approx, bool minimal) {
    if (!q.is_monic() || q.degree() < 1) throw Error(ErrorKind::InvalidArgument, "polynomial must be monic and nonconstant");
    if (where.exact()) {
        if (sign_at(q, where.lo) != 0) throw Error(ErrorKind::InvalidArgument, "point is not a root");
        return rational(where.lo);
    }
    if (q.degree() == 1) return rational(mpq_class(-q.coeff(0)));
    if (!(where.lo < where.hi) || sign_at(q, where.lo) * sign_at(q, where.hi) >= 0) {
        throw Error(ErrorKind::InvalidArgument, "interval does not bracket a root");
    }
    Eigenvalue e;
    e.kind_ = Kind::Algebraic;
    e.poly_ = q;
    e.lo_ = where.lo;
    e.hi_ = where.hi;
    e.minimal_ = minimal;
    const double lo = e.lo_.get_d();
    const double hi = e.hi_.get_d();
    double x = polish_root(q, std::clamp(approx, lo, hi));
    e.approx_ = std::clamp(x, lo, hi);
    return e;
}

Eigenvalue Eigenvalue::numeric(double value) {
    Eigenvalue e;
    e.kind_ = Kind::Numeric;
    e.approx_ = value;
    return e;
}

const mpq_class& Eigenvalue::rational_value() const {
    if (kind_ != Kind::Rational) throw Error(ErrorKind::InvalidArgument, "eigenvalue is not rational");
    return value_;
}

const RatPolynomial& Eigenvalue::defining_polynomial() const {
    if (kind_ == Kind::Numeric) throw Error(ErrorKind::InvalidArgument, "numeric eigenvalue has no defining polynomial");
    return poly_;
}

RootInterval Eigenvalue::interval() const {
    if (kind_ == Kind::Numeric) throw Error(ErrorKind::InvalidArgument, "numeric eigenvalue has no isolating interval");
    return RootInterval{lo_, hi_};
}

std::size_t Eigenvalue::multiplicity_in(const RatPolynomial& p) const {
    if (kind_ == Kind::Numeric) throw Error(ErrorKind::InvalidArgument, "numeric eigenvalue has no exact multiplicity");
    if (p.is_zero()) throw Error(ErrorKind::InvalidArgument, "multiplicity in the zero polynomial is unbounded");
    if (minimal_) return multiplicity_via_minpoly(p, poly_);
    // q is squarefree with a single root in (lo, hi); dividing out gcd(P, q)
    // lowers the multiplicity of every common root by one.
    std::size_t m = 0;
    RatPolynomial rest = p;
    while (true) {
        const RatPolynomial g = gcd(rest, poly_);
        if (g.degree() < 1 || sign_at(g, lo_) * sign_at(g, hi_) >= 0) break;
        rest = divmod(rest, g).first;
        ++m;
    }
    return m;
}

bool same_value(const Eigenvalue& a, const Eigenvalue& b) {
    if (!a.is_exact() || !b.is_exact()) throw Error(ErrorKind::InvalidArgument, "comparison needs exact descriptors");
    const bool ra = a.kind() == Eigenvalue::Kind::Rational;
    const bool rb = b.kind() == Eigenvalue::Kind::Rational;
    if (ra && rb) return a.rational_value() == b.rational_value();
    if (ra || rb) {
        const Eigenvalue& r = ra ? a : b;
        const Eigenvalue& x = ra ? b : a;
        const auto iv = x.interval();
        const mpq_class& v = r.rational_value();
        return iv.lo < v && v < iv.hi && sign_at(x.defining_polynomial(), v) == 0;
    }
    // Each is the only root of its polynomial in its interval, so they agree
    // exactly when the common factor has a root in both intervals.
    const auto ia = a.interval();
    const auto ib = b.interval();
    const mpq_class lo = std::max(ia.lo, ib.lo);
    const mpq_class hi = std::min(ia.hi, ib.hi);
    if (!(lo < hi)) return false;
    const RatPolynomial g = gcd(a.defining_polynomial(), b.defining_polynomial());
    if (g.degree() < 1) return false;
    return count_real_roots(g, lo, hi) > 0;
}

std::string Eigenvalue::to_string() const {
    char buf[64];
    switch (kind_) {
    case Kind::Rational: return specmult::to_string(value_);
    case Kind::Algebraic:
        std::snprintf(buf, sizeof buf, "%.12g", approx_);
        return "root of " + specmult::to_string(poly_) + " near " + buf;
    case Kind::Numeric: std::snprintf(buf, sizeof buf, "%.17g", approx_); return buf;
    }
    return {};
}

nlohmann::json to_json(const Eigenvalue& lambda) {
    switch (lambda.kind()) {
    case Eigenvalue::Kind::Rational:
        return {{"kind", "rational"}, {"value", to_string(lambda.rational_value())}, {"approx", lambda.approx()}};
    case Eigenvalue::Kind::Algebraic: {
        const auto iv = lambda.interval();
        return {{"kind", "algebraic"},
                {"polynomial", to_json(lambda.defining_polynomial())},
                {"minimal", lambda.is_minimal()},
                {"interval", {to_string(iv.lo), to_string(iv.hi)}},
                {"approx", lambda.approx()}};
    }
    case Eigenvalue::Kind::Numeric: return {{"kind", "numeric"}, {"approx", lambda.approx()}};
    }
    return {};
}

std::string to_string(Method m) {
    switch (m) {
    case Method::ExactRank: return "ExactRank";
    case Method::CharPolyDivision: return "CharPolyDivision";
    case Method::NumericCluster: return "NumericCluster";
    }
    return {};
}

nlohmann::json to_json(const MultiplicityResult& r) {
    return {{"lambda", to_json(r.lambda)},
            {"multiplicity", r.multiplicity},
            {"method", to_string(r.method)},
            {"tolerance", r.tolerance}};
}

// ---- exact elimination -----------------------------------------------------------

namespace {

// Row echelon form by full pivoting; returns rank and accumulates the sign
// and pivot product needed for the determinant.
struct Elimination {
    std::size_t rank = 0;
    GaussianRational det{1};
};

Elimination eliminate(DenseMatrix<GaussianRational>& m, const CancelToken* cancel) {
    const std::size_t n = m.dim();
    Elimination out;
    for (std::size_t k = 0; k < n; ++k) {
        if (cancel) cancel->check();
        std::size_t pr = n;
        std::size_t pc = n;
        for (std::size_t i = k; i < n && pr == n; ++i) {
            for (std::size_t j = k; j < n; ++j) {
                if (!m(i, j).is_zero()) {
                    pr = i;
                    pc = j;
                    break;
                }
            }
        }
        if (pr == n) {
            out.det = GaussianRational{};
            return out;
        }
        if (pr != k) {
            for (std::size_t j = 0; j < n; ++j) std::swap(m(pr, j), m(k, j));
            out.det = -out.det;
        }
        if (pc != k) {
            for (std::size_t i = 0; i < n; ++i) std::swap(m(i, pc), m(i, k));
            out.det = -out.det;
        }
        ++out.rank;
        out.det *= m(k, k);
        const GaussianRational inv = GaussianRational(1) / m(k, k);
        for (std::size_t i = k + 1; i < n; ++i) {
            if (m(i, k).is_zero()) continue;
            const GaussianRational f = m(i, k) * inv;
            for (std::size_t j = k + 1; j < n; ++j) {
                if (!m(k, j).is_zero()) m(i, j) -= f * m(k, j);
            }
            m(i, k) = GaussianRational{};
        }
    }
    return out;
}

DenseMatrix<GaussianRational> shifted(const ExactMatrix& b, const mpq_class& lambda) {
    DenseMatrix<GaussianRational> m = b.entries();
    for (std::size_t i = 0; i < m.dim(); ++i) m(i, i).re -= lambda;
    return m;
}

} // namespace

std::size_t exact_rank(DenseMatrix<GaussianRational> m, const CancelToken* cancel) {
    return eliminate(m, cancel).rank;
}

GaussianRational determinant_exact(DenseMatrix<GaussianRational> m, const CancelToken* cancel) {
    return eliminate(m, cancel).det;
}

MultiplicityResult multiplicity_exact_rational(const ExactMatrix& b, const mpq_class& lambda, const CancelToken* cancel) {
    const std::size_t rank = exact_rank(shifted(b, lambda), cancel);
    return MultiplicityResult{Eigenvalue::rational(lambda), b.dim() - rank, Method::ExactRank, 0.0};
}

// ---- characteristic polynomials ----------------------------------------------------

namespace {

struct IntOverflow {};

// int64 with overflow detection, for the division-free route.
struct Checked {
    long long v = 0;
    Checked() = default;
    Checked(long long x) : v(x) {} // NOLINT(google-explicit-constructor)
    friend Checked operator+(Checked a, Checked b) {
        long long r;
        if (__builtin_add_overflow(a.v, b.v, &r)) throw IntOverflow{};
        return r;
    }
    friend Checked operator-(Checked a, Checked b) {
        long long r;
        if (__builtin_sub_overflow(a.v, b.v, &r)) throw IntOverflow{};
        return r;
    }
    friend Checked operator*(Checked a, Checked b) {
        long long r;
        if (__builtin_mul_overflow(a.v, b.v, &r)) throw IntOverflow{};
        return r;
    }
    Checked& operator+=(Checked o) { return *this = *this + o; }
};

// Berkowitz: det(xI - A) as coefficients highest degree first, built up one
// leading principal block at a time via Toeplitz products.
template <class T, class Get>
std::vector<T> berkowitz(std::size_t n, Get a, const CancelToken* cancel) {
    if (n == 0) return {T(1)};
    std::vector<T> c{T(1), T(0) - a(0, 0)};
    std::vector<T> v;
    std::vector<T> w;
    for (std::size_t r = 1; r < n; ++r) {
        if (cancel) cancel->check();
        std::vector<T> col(r + 2, T(0));
        col[0] = T(1);
        col[1] = T(0) - a(r, r);
        v.assign(r, T(0));
        for (std::size_t i = 0; i < r; ++i) v[i] = a(i, r);
        for (std::size_t k = 0; k < r; ++k) {
            T s(0);
            for (std::size_t j = 0; j < r; ++j) s += a(r, j) * v[j];
            col[k + 2] = T(0) - s;
            if (k + 1 < r) {
                w.assign(r, T(0));
                for (std::size_t i = 0; i < r; ++i) {
                    for (std::size_t j = 0; j < r; ++j) w[i] += a(i, j) * v[j];
                }
                std::swap(v, w);
            }
        }
        std::vector<T> next(r + 2, T(0));
        for (std::size_t i = 0; i < r + 2; ++i) {
            for (std::size_t j = 0; j <= std::min(i, r); ++j) next[i] += col[i - j] * c[j];
        }
        c = std::move(next);
    }
    return c;
}

RatPolynomial real_part_polynomial(const std::vector<GaussianRational>& highest_first) {
    std::vector<mpq_class> c;
    for (auto it = highest_first.rbegin(); it != highest_first.rend(); ++it) {
        if (!it->is_real()) throw Error(ErrorKind::InvalidArgument, "characteristic polynomial is not real");
        c.push_back(it->re);
    }
    return RatPolynomial(std::move(c));
}

} // namespace

IntPolynomial char_poly_integral(const ExactMatrix& b) {
    if (!is_integral_real(b)) throw Error(ErrorKind::InvalidArgument, "matrix is not integral and real");
    const std::size_t n = b.dim();
    std::vector<long long> a(n * n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) a[i * n + j] = b(i, j).re.get_num().get_si();
    }
    std::vector<mpz_class> c;
    try {
        auto r = berkowitz<Checked>(n, [&](std::size_t i, std::size_t j) { return Checked(a[i * n + j]); }, nullptr);
        for (auto it = r.rbegin(); it != r.rend(); ++it) c.emplace_back(static_cast<long>(it->v));
    } catch (const IntOverflow&) {
        auto r = berkowitz<mpz_class>(n, [&](std::size_t i, std::size_t j) { return mpz_class(static_cast<long>(a[i * n + j])); }, nullptr);
        c.assign(r.rbegin(), r.rend());
    }
    return IntPolynomial(std::move(c));
}

RatPolynomial char_poly_berkowitz(const ExactMatrix& b, const CancelToken* cancel) {
    auto r = berkowitz<GaussianRational>(b.dim(), [&](std::size_t i, std::size_t j) { return b(i, j); }, cancel);
    return real_part_polynomial(r);
}

RatPolynomial char_poly_hessenberg(const ExactMatrix& b, const CancelToken* cancel) {
    const std::size_t n = b.dim();
    DenseMatrix<GaussianRational> h = b.entries();
    // Similarity reduction to upper Hessenberg form.
    for (std::size_t m = 1; m + 1 < n; ++m) {
        if (cancel) cancel->check();
        std::size_t piv = m;
        while (piv < n && h(piv, m - 1).is_zero()) ++piv;
        if (piv == n) continue;
        if (piv != m) {
            for (std::size_t j = 0; j < n; ++j) std::swap(h(piv, j), h(m, j));
            for (std::size_t i = 0; i < n; ++i) std::swap(h(i, piv), h(i, m));
        }
        const GaussianRational inv = GaussianRational(1) / h(m, m - 1);
        for (std::size_t i = m + 1; i < n; ++i) {
            if (h(i, m - 1).is_zero()) continue;
            const GaussianRational u = h(i, m - 1) * inv;
            for (std::size_t j = 0; j < n; ++j) {
                if (!h(m, j).is_zero()) h(i, j) -= u * h(m, j);
            }
            for (std::size_t r = 0; r < n; ++r) {
                if (!h(r, i).is_zero()) h(r, m) += u * h(r, i);
            }
        }
    }
    // p_k = (x - h_kk) p_{k-1} - sum_i h_{k-i,k} (prod_{j} h_{j,j-1}) p_{k-i-1}
    using CPoly = std::vector<GaussianRational>; // lowest first
    std::vector<CPoly> p(n + 1);
    p[0] = CPoly{GaussianRational(1)};
    for (std::size_t k = 1; k <= n; ++k) {
        if (cancel) cancel->check();
        CPoly next(k + 1);
        for (std::size_t d = 0; d < p[k - 1].size(); ++d) {
            next[d + 1] += p[k - 1][d];
            next[d] -= h(k - 1, k - 1) * p[k - 1][d];
        }
        GaussianRational t(1);
        for (std::size_t i = 1; i < k; ++i) {
            t *= h(k - i, k - i - 1);
            if (t.is_zero()) break;
            const GaussianRational f = h(k - i - 1, k - 1) * t;
            if (f.is_zero()) continue;
            for (std::size_t d = 0; d < p[k - i - 1].size(); ++d) next[d] -= f * p[k - i - 1][d];
        }
        p[k] = std::move(next);
    }
    std::vector<GaussianRational> highest(p[n].rbegin(), p[n].rend());
    return real_part_polynomial(highest);
}

RatPolynomial char_poly_exact(const ExactMatrix& b, const CancelToken* cancel) {
    if (is_integral_real(b)) return to_rational(char_poly_integral(b));
    return char_poly_hessenberg(b, cancel);
}

MultiplicityResult multiplicity_algebraic(const ExactMatrix& b, const Eigenvalue& lambda, const CancelToken* cancel) {
    const RatPolynomial p = char_poly_exact(b, cancel);
    return MultiplicityResult{lambda, lambda.multiplicity_in(p), Method::CharPolyDivision, 0.0};
}

// ---- numeric ---------------------------------------------------------------------------

SpectrumNumeric eigenvalues_numeric(const ApproxMatrix& b) {
    const auto n = static_cast<Eigen::Index>(b.dim());
    SpectrumNumeric out;
    if (n == 0) return out;
    bool real = true;
    double frob = 0.0;
    for (Eigen::Index i = 0; i < n; ++i) {
        for (Eigen::Index j = 0; j < n; ++j) {
            const ApproxComplex z = b(static_cast<std::size_t>(i), static_cast<std::size_t>(j));
            if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
                throw Error(ErrorKind::InvalidArgument, "matrix has non-finite entries");
            }
            real = real && z.imag() == 0.0;
            frob += std::norm(z);
        }
    }
    Eigen::VectorXd values;
    if (real) {
        Eigen::MatrixXd m(n, n);
        for (Eigen::Index i = 0; i < n; ++i) {
            for (Eigen::Index j = 0; j < n; ++j) m(i, j) = b(static_cast<std::size_t>(i), static_cast<std::size_t>(j)).real();
        }
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(m, Eigen::EigenvaluesOnly);
        if (solver.info() != Eigen::Success) throw Error(ErrorKind::ConvergenceFailure, "eigensolver did not converge");
        values = solver.eigenvalues();
    } else {
        Eigen::MatrixXcd m(n, n);
        for (Eigen::Index i = 0; i < n; ++i) {
            for (Eigen::Index j = 0; j < n; ++j) m(i, j) = b(static_cast<std::size_t>(i), static_cast<std::size_t>(j));
        }
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(m, Eigen::EigenvaluesOnly);
        if (solver.info() != Eigen::Success) throw Error(ErrorKind::ConvergenceFailure, "eigensolver did not converge");
        values = solver.eigenvalues();
    }
    out.values.assign(values.data(), values.data() + n);
    std::sort(out.values.begin(), out.values.end());
    out.residual_bound = 4.0 * static_cast<double>(n) * std::numeric_limits<double>::epsilon() * std::sqrt(frob);
    return out;
}

MultiplicityResult multiplicity_numeric(const SpectrumNumeric& spectrum, double lambda, double tol) {
    if (!(tol > spectrum.residual_bound)) {
        throw Error(ErrorKind::InvalidArgument, "tolerance must exceed the residual bound");
    }
    std::vector<double> included;
    std::vector<double> excluded;
    for (double v : spectrum.values) (std::abs(v - lambda) <= tol ? included : excluded).push_back(v);
    for (double e : excluded) {
        bool close = std::abs(e - lambda) < 2.0 * tol;
        for (double i : included) close = close || std::abs(e - i) < 2.0 * tol;
        if (close) {
            throw Error(ErrorKind::AmbiguousCluster,
                        "eigenvalue " + std::to_string(e) + " is too close to the cluster at " + std::to_string(lambda));
        }
    }
    return MultiplicityResult{Eigenvalue::numeric(lambda), included.size(), Method::NumericCluster, tol};
}

MultiplicityResult multiplicity_numeric(const ApproxMatrix& b, double lambda, double tol) {
    return multiplicity_numeric(eigenvalues_numeric(b), lambda, tol);
}

std::vector<Cluster> cluster_values(const std::vector<double>& sorted, double tol) {
    std::vector<Cluster> out;
    double sum = 0.0;
    for (std::size_t i = 0; i < sorted.size(); ++i) {
        if (i == 0 || sorted[i] - sorted[i - 1] > tol) {
            if (!out.empty()) out.back().center = sum / static_cast<double>(out.back().count);
            out.push_back(Cluster{0.0, 0});
            sum = 0.0;
        }
        sum += sorted[i];
        ++out.back().count;
    }
    if (!out.empty()) out.back().center = sum / static_cast<double>(out.back().count);
    return out;
}

MultiplicityResult multiplicity(const ExactMatrix& b, const Eigenvalue& lambda, double tol, const CancelToken* cancel) {
    switch (lambda.kind()) {
    case Eigenvalue::Kind::Rational: return multiplicity_exact_rational(b, lambda.rational_value(), cancel);
    case Eigenvalue::Kind::Algebraic: return multiplicity_algebraic(b, lambda, cancel);
    case Eigenvalue::Kind::Numeric: return multiplicity_numeric(to_approx(b), lambda.approx(), tol);
    }
    return {};
}

// ---- paths ---------------------------------------------------------------------------

bool path_spectrum_membership(const ExactMatrix& b, const Eigenvalue& lambda) {
    if (b.dim() == 0 || !is_path_graph(b.pattern())) throw Error(ErrorKind::NotAPath, "pattern is not a path");
    const auto order = path_order(b.pattern());
    const std::size_t n = order.size();
    if (lambda.kind() == Eigenvalue::Kind::Numeric) {
        const auto sub = multiplicity_numeric(to_approx(b), lambda.approx(), default_tolerance);
        return sub.multiplicity > 0;
    }
    // Leading principal minors along the path: d_k = (b_kk - x) d_{k-1} - |b_{k-1,k}|^2 d_{k-2}.
    if (lambda.kind() == Eigenvalue::Kind::Rational) {
        const mpq_class& x = lambda.rational_value();
        mpq_class prev2 = 1;
        mpq_class prev = b(order[0], order[0]).re - x;
        for (std::size_t k = 1; k < n; ++k) {
            mpq_class cur = (b(order[k], order[k]).re - x) * prev - b(order[k - 1], order[k]).norm() * prev2;
            prev2 = std::move(prev);
            prev = std::move(cur);
        }
        return sgn(prev) == 0;
    }
    const RatPolynomial x = RatPolynomial::monomial(1);
    RatPolynomial prev2 = RatPolynomial::constant(1);
    RatPolynomial prev = RatPolynomial::constant(b(order[0], order[0]).re) - x;
    for (std::size_t k = 1; k < n; ++k) {
        RatPolynomial cur = (RatPolynomial::constant(b(order[k], order[k]).re) - x) * prev -
                            b(order[k - 1], order[k]).norm() * prev2;
        prev2 = std::move(prev);
        prev = std::move(cur);
    }
    return lambda.multiplicity_in(prev) > 0;
}

// ---- certified spectra ------------------------------------------------------------------

namespace {

// Coefficients (lowest first) of prod (x - r_i).
std::vector<double> poly_from_roots(const std::vector<double>& roots) {
    std::vector<double> c{1.0};
    for (double r : roots) {
        std::vector<double> next(c.size() + 1, 0.0);
        for (std::size_t k = 0; k < c.size(); ++k) {
            next[k + 1] += c[k];
            next[k] -= r * c[k];
        }
        c = std::move(next);
    }
    return c;
}

bool near_integer(double v, double rel) {
    return std::abs(v) < 4.5e15 && std::abs(v - std::round(v)) <= rel * (1.0 + std::abs(v));
}

constexpr double rounding_tolerance = 1e-6;

struct Root {
    RootInterval where;
    double approx = 0.0;
    std::size_t multiplicity = 0;
    long cluster = -1;
    bool rational = false;
    RatPolynomial poly;
    bool minimal = false;
};

// Roots of a squarefree factor isolated by sign changes at the separators;
// empty when the separators do not split them one per interval.
std::vector<Root> isolate_by_separators(const RatPolynomial& a, const std::vector<mpq_class>& seps,
                                        const std::vector<Cluster>& clusters) {
    std::vector<int> signs(seps.size());
    for (std::size_t j = 0; j < seps.size(); ++j) {
        signs[j] = sign_at(a, seps[j]);
        if (signs[j] == 0) return {};
    }
    std::vector<Root> out;
    for (std::size_t j = 0; j + 1 < seps.size(); ++j) {
        if (signs[j] == signs[j + 1]) continue;
        Root r;
        r.where = {seps[j], seps[j + 1]};
        r.approx = clusters[j].center;
        r.cluster = static_cast<long>(j);
        out.push_back(std::move(r));
    }
    if (out.size() != static_cast<std::size_t>(a.degree())) return {};
    return out;
}

std::vector<Root> isolate_by_sturm(const RatPolynomial& a) {
    std::vector<Root> out;
    for (RootInterval iv : isolate_real_roots(a)) {
        Root r;
        const mpq_class width = mpq_class(1, 1000000000000L) * (1 + abs(iv.lo));
        RootInterval fine = iv;
        refine_root(a, fine, width);
        r.approx = mpq_class((fine.lo + fine.hi) / 2).get_d();
        r.where = fine.exact() ? fine : iv;
        out.push_back(std::move(r));
    }
    return out;
}

// A rational root of monic a times L is an integer, so once the interval is
// narrower than 1 / L at most one candidate remains.
void detect_rational(const RatPolynomial& a, Root& r) {
    if (a.degree() == 1) {
        r.where = {mpq_class(-a.coeff(0)), mpq_class(-a.coeff(0))};
        r.rational = true;
        return;
    }
    if (!r.where.exact()) {
        const mpz_class l = integral_scale(a);
        RootInterval iv = r.where;
        refine_root(a, iv, mpq_class(1, 2) / l);
        if (!iv.exact()) {
            const mpq_class scaled_lo = iv.lo * l;
            mpz_class k = scaled_lo.get_num() / scaled_lo.get_den(); // truncation
            if (k <= scaled_lo) ++k;
            const mpq_class candidate(k, l);
            if (candidate < iv.hi && sign_at(a, mpq_class(candidate)) == 0) iv = {candidate, candidate};
        }
        if (iv.exact()) r.where = iv;
    }
    if (r.where.exact()) {
        r.where.lo.canonicalize();
        r.where.hi = r.where.lo;
        r.rational = true;
    }
}

// Splits the irrational roots of a squarefree monic q into groups with an
// exactly verified rational factor each. Only degrees up to 3 are certified
// minimal: with no rational root such a factor is irreducible.
void find_factors(const RatPolynomial& q, std::vector<Root*> roots, std::size_t& budget) {
    auto assign = [&](const RatPolynomial& f, std::vector<Root*>& pool) {
        std::vector<Root*> rest;
        for (Root* r : pool) {
            if (sign_at(f, r->where.lo) * sign_at(f, r->where.hi) < 0) {
                r->poly = f;
                r->minimal = f.degree() <= 3;
            } else {
                rest.push_back(r);
            }
        }
        pool = std::move(rest);
    };

    RatPolynomial remaining = q;
    const mpz_class l = integral_scale(q);
    const double scale = l.get_d();
    bool searchable = std::isfinite(scale) && scale < 1e12 && q.degree() > 3;
    while (roots.size() > 3 && searchable && budget > 0) {
        const std::size_t m = roots.size();
        bool found = false;
        for (std::size_t k = 2; k < m && !found && budget > 0; ++k) {
            // Subsets of size k containing roots[0].
            std::vector<std::size_t> idx(k - 1);
            std::iota(idx.begin(), idx.end(), 1);
            while (budget > 0) {
                --budget;
                double trace = scale * roots[0]->approx;
                for (std::size_t i : idx) trace += scale * roots[i]->approx;
                if (near_integer(trace, rounding_tolerance)) {
                    std::vector<double> sr{scale * roots[0]->approx};
                    for (std::size_t i : idx) sr.push_back(scale * roots[i]->approx);
                    const auto approx = poly_from_roots(sr);
                    bool ok = true;
                    std::vector<mpq_class> coeffs(approx.size());
                    mpz_class power = 1;
                    for (std::size_t c = approx.size(); c-- > 0;) {
                        if (!near_integer(approx[c], rounding_tolerance)) {
                            ok = false;
                            break;
                        }
                        coeffs[c] = mpq_class(mpz_class(std::lround(approx[c])), power);
                        coeffs[c].canonicalize();
                        power *= l;
                    }
                    if (ok) {
                        RatPolynomial f(std::move(coeffs));
                        auto [quot, rem] = divmod(remaining, f);
                        if (rem.is_zero()) {
                            const std::size_t before = roots.size();
                            std::vector<Root*> probe = roots;
                            assign(f, probe);
                            if (before - probe.size() == k) {
                                roots = std::move(probe);
                                remaining = std::move(quot);
                                found = true;
                                break;
                            }
                        }
                    }
                }
                std::size_t i = idx.size();
                while (i > 0 && idx[i - 1] == m - idx.size() + i - 1) --i;
                if (i == 0) break;
                ++idx[i - 1];
                for (std::size_t j = i; j < idx.size(); ++j) idx[j] = idx[j - 1] + 1;
            }
        }
        if (!found) break;
    }
    for (Root* r : roots) {
        r->poly = remaining;
        r->minimal = remaining.degree() <= 3;
    }
}

} // namespace

CertifiedSpectrum certify_spectrum(const ExactMatrix& b, const CertifyOptions& options) {
    CertifiedSpectrum out;
    const std::size_t n = b.dim();
    out.charpoly = char_poly_exact(b, options.cancel);
    out.numeric = eigenvalues_numeric(to_approx(b));
    if (n == 0) {
        out.complete = true;
        out.numeric_consistent = true;
        return out;
    }

    double max_abs = 1.0;
    for (double v : out.numeric.values) max_abs = std::max(max_abs, std::abs(v));
    const auto clusters = cluster_values(out.numeric.values, options.cluster_tolerance * max_abs);
    std::vector<mpq_class> seps;
    seps.emplace_back(clusters.front().center - 1.0 - std::abs(clusters.front().center));
    for (std::size_t j = 0; j + 1 < clusters.size(); ++j) {
        seps.emplace_back((clusters[j].center + clusters[j + 1].center) / 2);
    }
    seps.emplace_back(clusters.back().center + 1.0 + std::abs(clusters.back().center));

    bool consistent = true;
    std::vector<Root> roots;
    for (const auto& [a, mult] : squarefree_decomposition(out.charpoly)) {
        if (options.cancel) options.cancel->check();
        std::vector<Root> part = isolate_by_separators(a, seps, clusters);
        if (part.empty()) {
            consistent = false;
            part = isolate_by_sturm(a);
            if (part.size() != static_cast<std::size_t>(a.degree())) {
                throw Error(ErrorKind::InvalidArgument, "characteristic polynomial has non-real roots");
            }
        }
        for (Root& r : part) {
            r.multiplicity = mult;
            detect_rational(a, r);
        }
        RatPolynomial irrational = a;
        std::vector<Root*> pending;
        for (Root& r : part) {
            if (r.rational) {
                irrational = divmod(irrational, RatPolynomial::linear_root(r.where.lo)).first;
            }
        }
        const std::size_t first = roots.size();
        for (Root& r : part) roots.push_back(std::move(r));
        for (std::size_t i = first; i < roots.size(); ++i) {
            if (!roots[i].rational) pending.push_back(&roots[i]);
        }
        std::size_t budget = options.max_candidates;
        if (!pending.empty()) find_factors(irrational, pending, budget);
    }

    std::vector<std::size_t> hits(clusters.size(), 0);
    std::size_t total = 0;
    for (const Root& r : roots) {
        total += r.multiplicity;
        if (r.cluster < 0) continue;
        const auto c = static_cast<std::size_t>(r.cluster);
        ++hits[c];
        consistent = consistent && clusters[c].count == r.multiplicity;
    }
    for (std::size_t h : hits) consistent = consistent && h == 1;
    out.numeric_consistent = consistent;
    out.complete = total == n;

    std::sort(roots.begin(), roots.end(), [](const Root& x, const Root& y) { return x.approx < y.approx; });
    for (const Root& r : roots) {
        if (r.rational) {
            out.eigenvalues.push_back({Eigenvalue::rational(r.where.lo), r.multiplicity});
        } else {
            out.eigenvalues.push_back({Eigenvalue::isolated(r.poly, r.where, r.approx, r.minimal), r.multiplicity});
        }
    }
    return out;
}

nlohmann::json to_json(const CertifiedSpectrum& s) {
    nlohmann::json eig = nlohmann::json::array();
    for (const auto& e : s.eigenvalues) eig.push_back({{"lambda", to_json(e.lambda)}, {"multiplicity", e.multiplicity}});
    return {{"charpoly", to_json(s.charpoly)},
            {"numeric", s.numeric.values},
            {"residual_bound", s.numeric.residual_bound},
            {"eigenvalues", eig},
            {"certified", s.complete},
            {"numeric_consistent", s.numeric_consistent}};
}

ExactMatrix plant_eigenvalue(const ExactMatrix& b, const mpq_class& lambda, Vertex vertex) {
    if (vertex >= b.dim()) throw Error(ErrorKind::IndexOutOfRange, "vertex out of range");
    DenseMatrix<GaussianRational> m = shifted(b, lambda);
    const mpq_class f0 = determinant_exact(m).re;
    m(vertex, vertex).re += 1;
    const mpq_class slope = determinant_exact(m).re - f0;
    if (sgn(slope) == 0) return b;
    DenseMatrix<GaussianRational> out = b.entries();
    out(vertex, vertex).re -= f0 / slope;
    return ExactMatrix(std::move(out), b.pattern());
}

// ---- probe ---------------------------------------------------------------------------------

MultiplicityProbe::MultiplicityProbe(ExactMatrix b, Eigenvalue lambda, double tol, const CancelToken* cancel)
    : b_(std::move(b)), lambda_(std::move(lambda)), tol_(tol), cancel_(cancel), integral_(is_integral_real(b_)) {}

Method MultiplicityProbe::method() const noexcept {
    switch (lambda_.kind()) {
    case Eigenvalue::Kind::Rational: return integral_ ? Method::CharPolyDivision : Method::ExactRank;
    case Eigenvalue::Kind::Algebraic: return Method::CharPolyDivision;
    case Eigenvalue::Kind::Numeric: return Method::NumericCluster;
    }
    return Method::ExactRank;
}

std::size_t MultiplicityProbe::on(const VertexSet& keep) const {
    if (keep.empty()) return 0;
    auto it = cache_.find(keep.ids());
    if (it != cache_.end()) return it->second;
    const std::size_t m = compute(keep);
    cache_.emplace(keep.ids(), m);
    return m;
}

namespace {

// Campaigns probe the same submatrices at every eigenvalue of a matrix.
RatPolynomial cached_char_poly(const ExactMatrix& b, const CancelToken* cancel) {
    thread_local std::unordered_map<std::string, RatPolynomial> cache;
    std::string key = serialize_matrix(b);
    if (auto it = cache.find(key); it != cache.end()) return it->second;
    RatPolynomial p = char_poly_hessenberg(b, cancel);
    if (cache.size() >= 4096) cache.clear();
    cache.emplace(std::move(key), p);
    return p;
}

} // namespace

std::size_t MultiplicityProbe::compute(const VertexSet& keep) const {
    const ExactMatrix sub = principal_submatrix(b_, keep).matrix;
    switch (lambda_.kind()) {
    case Eigenvalue::Kind::Numeric: return multiplicity_numeric(to_approx(sub), lambda_.approx(), tol_).multiplicity;
    case Eigenvalue::Kind::Rational:
        if (!integral_) return multiplicity_exact_rational(sub, lambda_.rational_value(), cancel_).multiplicity;
        [[fallthrough]];
    case Eigenvalue::Kind::Algebraic:
        if (integral_) {
            const IntPolynomial p = char_poly_integral(sub);
            if (lambda_.is_minimal()) {
                // Roots of a monic integer polynomial are algebraic integers, so a
                // minimal polynomial with a fractional coefficient never divides.
                IntPolynomial mu;
                try {
                    mu = to_integer(lambda_.defining_polynomial());
                } catch (const Error&) {
                    return 0;
                }
                return multiplicity_via_minpoly(p, mu);
            }
            return lambda_.multiplicity_in(to_rational(p));
        }
        return lambda_.multiplicity_in(cached_char_poly(sub, cancel_));
    }
    return 0;
}

} // namespace specmult
