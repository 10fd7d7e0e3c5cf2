#include "specmult/hermitian.hpp"

#include <algorithm>
#include <limits>
#include <random>
#include <sstream>

namespace specmult {

ApproxMatrix to_approx(const ExactMatrix& b) {
    const std::size_t n = b.dim();
    DenseMatrix<ApproxComplex> m(n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) m(i, j) = b(i, j).to_complex();
    }
    return ApproxMatrix(std::move(m), b.pattern());
}

bool is_integral_real(const ExactMatrix& b) {
    const std::size_t n = b.dim();
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            const GaussianRational& z = b(i, j);
            if (!z.is_real() || z.re.get_den() != 1 || !z.re.get_num().fits_slong_p()) return false;
        }
    }
    return true;
}

// ---- gain graphs -----------------------------------------------------------

namespace {

constexpr double unit_tolerance = 1e-12;

void require_unit(ApproxComplex g) {
    if (!std::isfinite(g.real()) || !std::isfinite(g.imag()) || std::abs(std::abs(g) - 1.0) > unit_tolerance) {
        throw Error(ErrorKind::InvalidArgument, "gain " + to_string(g) + " is not of unit modulus");
    }
}

} // namespace

GainGraph::GainGraph(Graph base, std::vector<ApproxComplex> gains) : base_(std::move(base)), gains_(std::move(gains)) {
    if (gains_.size() != base_.size()) {
        throw Error(ErrorKind::DimensionMismatch, "one gain per edge is required");
    }
    for (ApproxComplex g : gains_) require_unit(g);
}

GainGraph GainGraph::trivial(Graph base) {
    std::vector<ApproxComplex> gains(base.size(), ApproxComplex{1.0, 0.0});
    return GainGraph(std::move(base), std::move(gains));
}

std::size_t GainGraph::edge_index(Vertex u, Vertex v) const {
    const Edge e = make_edge(u, v);
    const auto edges = base_.edges();
    const auto it = std::lower_bound(edges.begin(), edges.end(), e);
    if (it == edges.end() || *it != e) {
        throw Error(ErrorKind::MissingEdge, "no edge " + std::to_string(u) + "-" + std::to_string(v));
    }
    return static_cast<std::size_t>(it - edges.begin());
}

ApproxComplex GainGraph::gain(Vertex u, Vertex v) const {
    const ApproxComplex g = gains_[edge_index(u, v)];
    return u < v ? g : std::conj(g);
}

void GainGraph::set_gain(Vertex u, Vertex v, ApproxComplex value) {
    require_unit(value);
    gains_[edge_index(u, v)] = u < v ? value : std::conj(value);
}

CycleGain cycle_gain(const GainGraph& phi) {
    const auto order = cycle_order(phi.base());
    ApproxComplex product{1.0, 0.0};
    for (std::size_t i = 0; i < order.size(); ++i) {
        product *= phi.gain(order[i], order[(i + 1) % order.size()]);
    }
    return CycleGain{product};
}

ApproxMatrix a_alpha_gain(const GainGraph& phi, double alpha) {
    if (!(alpha >= 0.0 && alpha < 1.0)) throw Error(ErrorKind::AlphaOutOfRange, "alpha must lie in [0, 1)");
    const Graph& g = phi.base();
    DenseMatrix<ApproxComplex> m(g.order());
    for (Vertex v = 0; v < g.order(); ++v) m(v, v) = alpha * static_cast<double>(g.degree(v));
    for (const Edge& e : g.edges()) {
        m(e.u, e.v) = (1.0 - alpha) * phi.gain(e.u, e.v);
        m(e.v, e.u) = std::conj(m(e.u, e.v));
    }
    return ApproxMatrix(std::move(m), g);
}

ExactMatrix a_alpha_gain_exact(const GainGraph& phi, const mpq_class& alpha) {
    if (sgn(alpha) < 0 || alpha >= 1) throw Error(ErrorKind::AlphaOutOfRange, "alpha must lie in [0, 1)");
    const Graph& g = phi.base();
    DenseMatrix<GaussianRational> m(g.order());
    for (Vertex v = 0; v < g.order(); ++v) m(v, v) = GaussianRational(alpha * static_cast<long>(g.degree(v)));
    const mpq_class scale = 1 - alpha;
    for (const Edge& e : g.edges()) {
        const ApproxComplex z = phi.gain(e.u, e.v);
        GaussianRational exact;
        if (z == ApproxComplex{1, 0}) exact = GaussianRational(1);
        else if (z == ApproxComplex{-1, 0}) exact = GaussianRational(-1);
        else if (z == ApproxComplex{0, 1}) exact = GaussianRational(0, 1);
        else if (z == ApproxComplex{0, -1}) exact = GaussianRational(0, -1);
        else throw Error(ErrorKind::InvalidArgument, "gain " + to_string(z) + " has no exact representation");
        m(e.u, e.v) = GaussianRational(scale) * exact;
        m(e.v, e.u) = m(e.u, e.v).conj();
    }
    return ExactMatrix(std::move(m), g);
}

// ---- random sampling -------------------------------------------------------

namespace {

mpq_class draw_rational(std::mt19937_64& rng, long bound, long den_max) {
    std::uniform_int_distribution<long> num(-bound, bound);
    std::uniform_int_distribution<long> den(1, std::max(1L, den_max));
    mpq_class q(num(rng), den(rng));
    q.canonicalize();
    return q;
}

} // namespace

ExactMatrix random_in_S(const Graph& g, std::uint64_t seed, const RandomConfig& config) {
    if (config.numerator_bound < 1) throw Error(ErrorKind::InvalidArgument, "numerator bound must be positive");
    std::mt19937_64 rng(seed);
    const std::size_t n = g.order();
    DenseMatrix<GaussianRational> m(n);
    for (Vertex v = 0; v < n; ++v) {
        if (!config.zero_diagonal) m(v, v) = GaussianRational(draw_rational(rng, config.diagonal_bound, config.denominator_max));
    }
    for (const Edge& e : g.edges()) {
        GaussianRational w;
        do {
            w.re = draw_rational(rng, config.numerator_bound, config.denominator_max);
            w.im = config.complex_weights ? draw_rational(rng, config.numerator_bound, config.denominator_max) : mpq_class(0);
        } while (w.is_zero());
        m(e.u, e.v) = w;
        m(e.v, e.u) = w.conj();
    }
    return ExactMatrix(std::move(m), g);
}

// ---- text format -----------------------------------------------------------

namespace {

std::vector<std::string> tokens_of(const std::string& line) {
    std::istringstream in(line);
    std::vector<std::string> out;
    for (std::string t; in >> t;) out.push_back(t);
    return out;
}

} // namespace

DenseMatrix<GaussianRational> parse_matrix(std::string_view text) {
    std::istringstream in{std::string(text)};
    std::vector<std::pair<std::size_t, std::string>> lines;
    std::size_t lineno = 0;
    for (std::string line; std::getline(in, line);) {
        ++lineno;
        if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        lines.emplace_back(lineno, line);
    }
    if (lines.empty()) throw ParseError(lineno, "missing dimension line");
    const auto header = tokens_of(lines[0].second);
    std::size_t n = 0;
    try {
        if (header.size() != 1) throw std::invalid_argument("header");
        std::size_t used = 0;
        n = std::stoul(header[0], &used);
        if (used != header[0].size()) throw std::invalid_argument("header");
    } catch (const std::logic_error&) {
        throw ParseError(lines[0].first, "first line must be the dimension n");
    }
    if (lines.size() != n + 1) {
        throw ParseError(lines.back().first, "expected " + std::to_string(n) + " matrix rows, found " +
                                                 std::to_string(lines.size() - 1));
    }
    DenseMatrix<GaussianRational> m(n);
    for (std::size_t r = 0; r < n; ++r) {
        const auto& [ln, line] = lines[r + 1];
        auto toks = tokens_of(line);
        if (toks.size() != n) {
            // Re-attach detached imaginary units: "3/4 i" -> "3/4i".
            std::vector<std::string> merged;
            for (auto& t : toks) {
                if (t == "i" && !merged.empty() && merged.back().back() != 'i') merged.back() += t;
                else merged.push_back(std::move(t));
            }
            toks = std::move(merged);
        }
        if (toks.size() != n) {
            throw ParseError(ln, "row " + std::to_string(r) + " has " + std::to_string(toks.size()) + " entries");
        }
        for (std::size_t c = 0; c < n; ++c) {
            try {
                m(r, c) = parse_gaussian_rational(toks[c]);
            } catch (const Error& e) {
                throw ParseError(ln, e.what());
            }
        }
    }
    return m;
}

std::string serialize_matrix(const ExactMatrix& b) {
    std::string out = std::to_string(b.dim()) + "\n";
    for (std::size_t i = 0; i < b.dim(); ++i) {
        for (std::size_t j = 0; j < b.dim(); ++j) {
            if (j) out += ' ';
            out += to_string(b(i, j));
        }
        out += '\n';
    }
    return out;
}

std::string serialize_matrix(const ApproxMatrix& b) {
    std::string out = std::to_string(b.dim()) + "\n";
    for (std::size_t i = 0; i < b.dim(); ++i) {
        for (std::size_t j = 0; j < b.dim(); ++j) {
            if (j) out += ' ';
            out += to_string(b(i, j));
        }
        out += '\n';
    }
    return out;
}

} // namespace specmult
