#pragma once

#include <gmpxx.h>

#include <complex>
#include <string>
#include <string_view>

namespace specmult {

/// Exact complex number with rational real and imaginary parts.
struct GaussianRational {
    mpq_class re;
    mpq_class im;

    GaussianRational() = default;
    GaussianRational(long value) : re(value) {} // NOLINT(google-explicit-constructor)
    GaussianRational(mpq_class real, mpq_class imag = 0) : re(std::move(real)), im(std::move(imag)) {}

    bool is_zero() const { return sgn(re) == 0 && sgn(im) == 0; }
    bool is_real() const { return sgn(im) == 0; }
    GaussianRational conj() const { return {re, -im}; }
    /// |z|^2
    mpq_class norm() const { return re * re + im * im; }
    std::complex<double> to_complex() const { return {re.get_d(), im.get_d()}; }

    GaussianRational& operator+=(const GaussianRational& o) {
        re += o.re;
        im += o.im;
        return *this;
    }
    GaussianRational& operator-=(const GaussianRational& o) {
        re -= o.re;
        im -= o.im;
        return *this;
    }
    GaussianRational& operator*=(const GaussianRational& o);
    GaussianRational& operator/=(const GaussianRational& o);

    friend GaussianRational operator+(GaussianRational a, const GaussianRational& b) { return a += b; }
    friend GaussianRational operator-(GaussianRational a, const GaussianRational& b) { return a -= b; }
    friend GaussianRational operator*(GaussianRational a, const GaussianRational& b) { return a *= b; }
    friend GaussianRational operator/(GaussianRational a, const GaussianRational& b) { return a /= b; }
    friend GaussianRational operator-(const GaussianRational& a) { return {-a.re, -a.im}; }
    friend bool operator==(const GaussianRational& a, const GaussianRational& b) {
        return a.re == b.re && a.im == b.im;
    }
};

using ApproxComplex = std::complex<double>;

/// Exact decimal or fraction: "3", "-2/7", "0.125", "1.5e-3".
/// Throws Error(Parse) on malformed input.
mpq_class parse_rational(std::string_view text);

/// "a/b+c/di", "2-i", "-3/4i", "0.5+0.25i".
GaussianRational parse_gaussian_rational(std::string_view text);
ApproxComplex parse_approx_complex(std::string_view text);

std::string to_string(const mpq_class& q);
std::string to_string(const GaussianRational& z);
std::string to_string(const ApproxComplex& z);

} // namespace specmult
