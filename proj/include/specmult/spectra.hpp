#pragma once

#include "specmult/cancel.hpp"
#include "specmult/hermitian.hpp"
#include "specmult/polynomial.hpp"

#include <nlohmann/json_fwd.hpp>

#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace specmult {

/// A real eigenvalue descriptor. Rational values are stored exactly. An
/// algebraic value is the unique root of a monic squarefree polynomial q in
/// an open interval (lo, hi) with q(lo) q(hi) < 0; when q is known to be
/// irreducible it is the minimal polynomial. Numeric descriptors are bare
/// floating values and carry no certificate.
class Eigenvalue {
public:
    enum class Kind { Rational, Algebraic, Numeric };

    static Eigenvalue rational(mpq_class value);
    /// minpoly must be monic and irreducible over Q (the caller vouches for
    /// irreducibility); approx selects the root. Degree 1 gives a Rational.
    static Eigenvalue algebraic(const RatPolynomial& minpoly, double approx);
    static Eigenvalue algebraic(const IntPolynomial& minpoly, double approx);
    /// The root of a monic squarefree q inside an isolating interval.
    static Eigenvalue isolated(const RatPolynomial& q, const RootInterval& where, double approx, bool minimal = false);
    static Eigenvalue numeric(double value);

    Kind kind() const noexcept { return kind_; }
    bool is_exact() const noexcept { return kind_ != Kind::Numeric; }
    double approx() const noexcept { return approx_; }
    /// Throws Error(InvalidArgument) unless kind() == Rational.
    const mpq_class& rational_value() const;
    /// x - q for rationals. Throws Error(InvalidArgument) for Numeric.
    const RatPolynomial& defining_polynomial() const;
    /// Whether defining_polynomial() is the minimal polynomial.
    bool is_minimal() const noexcept { return minimal_; }
    /// Isolating interval (lo == hi for rationals).
    RootInterval interval() const;

    /// Multiplicity of this value as a root of p (nonzero). Exact kinds only.
    std::size_t multiplicity_in(const RatPolynomial& p) const;

    std::string to_string() const;

private:
    Kind kind_ = Kind::Numeric;
    mpq_class value_;
    RatPolynomial poly_;
    mpq_class lo_;
    mpq_class hi_;
    bool minimal_ = false;
    double approx_ = 0.0;
};

/// Same real number (exact descriptors only; Error(InvalidArgument) otherwise).
bool same_value(const Eigenvalue& a, const Eigenvalue& b);

nlohmann::json to_json(const Eigenvalue& lambda);

enum class Method { ExactRank, CharPolyDivision, NumericCluster };
std::string to_string(Method m);

struct MultiplicityResult {
    Eigenvalue lambda;
    std::size_t multiplicity = 0;
    Method method = Method::ExactRank;
    double tolerance = 0.0;
};

nlohmann::json to_json(const MultiplicityResult& r);

struct SpectrumNumeric {
    std::vector<double> values; // ascending
    double residual_bound = 0.0;
};

// ---- exact linear algebra ----------------------------------------------------

/// Rank by fraction Gaussian elimination with full pivoting.
std::size_t exact_rank(DenseMatrix<GaussianRational> m, const CancelToken* cancel = nullptr);
GaussianRational determinant_exact(DenseMatrix<GaussianRational> m, const CancelToken* cancel = nullptr);

/// n - rank(B - lambda I).
MultiplicityResult multiplicity_exact_rational(const ExactMatrix& b, const mpq_class& lambda,
                                               const CancelToken* cancel = nullptr);

/// det(xI - B). Integral real matrices take the division-free route over
/// machine integers (falling back to big integers on overflow); everything
/// else goes through a Hessenberg reduction over the Gaussian rationals.
RatPolynomial char_poly_exact(const ExactMatrix& b, const CancelToken* cancel = nullptr);

/// The two routes separately, for cross-checking.
RatPolynomial char_poly_hessenberg(const ExactMatrix& b, const CancelToken* cancel = nullptr);
RatPolynomial char_poly_berkowitz(const ExactMatrix& b, const CancelToken* cancel = nullptr);

/// Requires is_integral_real(b) (Error(InvalidArgument) otherwise).
IntPolynomial char_poly_integral(const ExactMatrix& b);

/// Multiplicity of an exact eigenvalue as a root of the characteristic
/// polynomial.
MultiplicityResult multiplicity_algebraic(const ExactMatrix& b, const Eigenvalue& lambda,
                                          const CancelToken* cancel = nullptr);

// ---- numeric -----------------------------------------------------------------

inline constexpr double default_tolerance = 1e-8;

/// Eigen's self-adjoint solver (Householder tridiagonalization + implicit QL);
/// residual_bound = 4 n eps ||B||_F. Throws Error(ConvergenceFailure).
SpectrumNumeric eigenvalues_numeric(const ApproxMatrix& b);

/// Count of eigenvalues within tol of lambda. Throws Error(AmbiguousCluster)
/// when an excluded eigenvalue lies within 2 tol of lambda or of an included
/// one, and Error(InvalidArgument) when tol does not exceed the residual bound.
MultiplicityResult multiplicity_numeric(const ApproxMatrix& b, double lambda, double tol = default_tolerance);
MultiplicityResult multiplicity_numeric(const SpectrumNumeric& spectrum, double lambda, double tol = default_tolerance);

struct Cluster {
    double center = 0.0;
    std::size_t count = 0;
};

/// Groups sorted values whose consecutive gaps are at most tol.
std::vector<Cluster> cluster_values(const std::vector<double>& sorted, double tol);

/// Dispatches on the descriptor: ExactRank for rationals, CharPolyDivision
/// for algebraic numbers, NumericCluster for floating values.
MultiplicityResult multiplicity(const ExactMatrix& b, const Eigenvalue& lambda, double tol = default_tolerance,
                                const CancelToken* cancel = nullptr);

// ---- paths -------------------------------------------------------------------

/// Whether lambda is an eigenvalue of a matrix whose pattern is a path,
/// via the three-term recurrence of leading principal minors taken along the
/// path. Numeric descriptors are compared with default_tolerance.
/// Throws Error(NotAPath).
bool path_spectrum_membership(const ExactMatrix& b, const Eigenvalue& lambda);

// ---- certified spectra ---------------------------------------------------------

struct CertifiedEigenvalue {
    Eigenvalue lambda;
    std::size_t multiplicity = 0;
};

struct CertifiedSpectrum {
    RatPolynomial charpoly;
    SpectrumNumeric numeric;
    /// Distinct eigenvalues in ascending order with exact multiplicities.
    std::vector<CertifiedEigenvalue> eigenvalues;
    /// Every eigenvalue has an exact descriptor and the multiplicities sum to n.
    bool complete = false;
    /// The numeric clusters match the exact eigenvalues one to one, with the
    /// same counts.
    bool numeric_consistent = false;
};

struct CertifyOptions {
    double cluster_tolerance = 1e-6;
    /// Budget for the search for minimal polynomials among conjugate roots.
    std::size_t max_candidates = 20000;
    const CancelToken* cancel = nullptr;
};

/// Exact descriptors for every distinct eigenvalue. The characteristic
/// polynomial is split into squarefree parts a_i (roots of multiplicity
/// exactly i), the real roots of each a_i are isolated by sign changes at
/// rational points between numeric clusters (Sturm bisection when that does
/// not separate them), rational roots are detected exactly, and small
/// factors are searched for to recover minimal polynomials.
CertifiedSpectrum certify_spectrum(const ExactMatrix& b, const CertifyOptions& options = {});

nlohmann::json to_json(const CertifiedSpectrum& s);

/// Moves the diagonal entry at `vertex` so that lambda becomes an eigenvalue.
/// Returns b unchanged when that entry does not influence det(B - lambda I).
ExactMatrix plant_eigenvalue(const ExactMatrix& b, const mpq_class& lambda, Vertex vertex);

// ---- multiplicities of principal submatrices -------------------------------------

/// Multiplicities m_B(G[S], lambda) for a fixed matrix and eigenvalue,
/// memoized by vertex set. Not thread-safe; use one probe per worker.
class MultiplicityProbe {
public:
    MultiplicityProbe(ExactMatrix b, Eigenvalue lambda, double tol = default_tolerance,
                      const CancelToken* cancel = nullptr);

    const ExactMatrix& matrix() const noexcept { return b_; }
    const Eigenvalue& lambda() const noexcept { return lambda_; }
    Method method() const noexcept;
    double tolerance() const noexcept { return lambda_.is_exact() ? 0.0 : tol_; }

    /// Multiplicity in B[keep]; the empty set gives 0.
    std::size_t on(const VertexSet& keep) const;
    std::size_t whole() const { return on(VertexSet::range(b_.dim())); }
    std::size_t without(const VertexSet& removed) const { return on(removed.complement(b_.dim())); }
    bool in_spectrum(const VertexSet& keep) const { return on(keep) > 0; }

private:
    std::size_t compute(const VertexSet& keep) const;

    ExactMatrix b_;
    Eigenvalue lambda_;
    double tol_;
    const CancelToken* cancel_;
    bool integral_;
    mutable std::map<std::vector<Vertex>, std::size_t> cache_;
};

} // namespace specmult
