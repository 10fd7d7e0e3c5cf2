#include "specmult/scalar.hpp"

#include "specmult/errors.hpp"

#include <cctype>
#include <charconv>
#include <cstdio>
#include <string>

namespace specmult {

GaussianRational& GaussianRational::operator*=(const GaussianRational& o) {
    mpq_class r = re * o.re - im * o.im;
    im = re * o.im + im * o.re;
    re = std::move(r);
    return *this;
}

GaussianRational& GaussianRational::operator/=(const GaussianRational& o) {
    const mpq_class d = o.norm();
    if (sgn(d) == 0) throw Error(ErrorKind::InvalidArgument, "division by zero");
    mpq_class r = (re * o.re + im * o.im) / d;
    im = (im * o.re - re * o.im) / d;
    re = std::move(r);
    return *this;
}

namespace {

[[noreturn]] void bad(std::string_view text, const char* why) {
    throw Error(ErrorKind::Parse, "cannot parse number '" + std::string(text) + "': " + why);
}

bool all_digits(std::string_view s) {
    if (s.empty()) return false;
    for (char c : s) {
        if (!std::isdigit(static_cast<unsigned char>(c))) return false;
    }
    return true;
}

mpz_class ten_pow(unsigned long e) {
    mpz_class r;
    mpz_ui_pow_ui(r.get_mpz_t(), 10, e);
    return r;
}

// Unsigned decimal "ddd", "ddd.ddd", ".ddd", optionally followed by e[+-]ddd.
mpq_class parse_unsigned_decimal(std::string_view whole, std::string_view s) {
    long exponent = 0;
    if (auto e = s.find_first_of("eE"); e != std::string_view::npos) {
        std::string_view exp = s.substr(e + 1);
        s = s.substr(0, e);
        bool neg = false;
        if (!exp.empty() && (exp[0] == '+' || exp[0] == '-')) {
            neg = exp[0] == '-';
            exp.remove_prefix(1);
        }
        if (!all_digits(exp)) bad(whole, "bad exponent");
        auto [ptr, ec] = std::from_chars(exp.data(), exp.data() + exp.size(), exponent);
        if (ec != std::errc() || exponent > 4096) bad(whole, "exponent out of range");
        if (neg) exponent = -exponent;
    }
    std::string digits;
    if (auto dot = s.find('.'); dot != std::string_view::npos) {
        std::string_view ip = s.substr(0, dot);
        std::string_view fp = s.substr(dot + 1);
        if ((!ip.empty() && !all_digits(ip)) || (!fp.empty() && !all_digits(fp)) || (ip.empty() && fp.empty())) {
            bad(whole, "bad decimal");
        }
        digits = std::string(ip) + std::string(fp);
        exponent -= static_cast<long>(fp.size());
    } else {
        if (!all_digits(s)) bad(whole, "expected digits");
        digits = std::string(s);
    }
    mpq_class q{mpz_class(digits, 10)};
    if (exponent > 0) q *= ten_pow(static_cast<unsigned long>(exponent));
    else if (exponent < 0) q /= ten_pow(static_cast<unsigned long>(-exponent));
    q.canonicalize();
    return q;
}

std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
}

// Unsigned magnitude "a", "a/b", "a.b" (no sign).
mpq_class parse_magnitude(std::string_view whole, std::string_view s) {
    if (auto slash = s.find('/'); slash != std::string_view::npos) {
        std::string_view num = s.substr(0, slash);
        std::string_view den = s.substr(slash + 1);
        if (!all_digits(num) || !all_digits(den)) bad(whole, "fractions need integer parts");
        mpz_class d(std::string(den), 10);
        if (d == 0) bad(whole, "zero denominator");
        mpq_class q(mpz_class(std::string(num), 10), d);
        q.canonicalize();
        return q;
    }
    return parse_unsigned_decimal(whole, s);
}

} // namespace

mpq_class parse_rational(std::string_view text) {
    std::string_view s = trim(text);
    bool neg = false;
    if (!s.empty() && (s[0] == '+' || s[0] == '-')) {
        neg = s[0] == '-';
        s.remove_prefix(1);
    }
    if (s.empty()) bad(text, "empty");
    mpq_class q = parse_magnitude(text, s);
    return neg ? mpq_class(-q) : q;
}

GaussianRational parse_gaussian_rational(std::string_view text) {
    std::string_view s = trim(text);
    if (s.empty()) bad(text, "empty");
    GaussianRational z;
    bool seen_real = false;
    bool seen_imag = false;
    std::size_t pos = 0;
    while (pos < s.size()) {
        bool neg = false;
        if (s[pos] == '+' || s[pos] == '-') {
            neg = s[pos] == '-';
            ++pos;
        } else if (pos != 0) {
            bad(text, "expected sign between terms");
        }
        // A term ends at the next sign that is not part of an exponent.
        std::size_t end = pos;
        while (end < s.size()) {
            const char c = s[end];
            if ((c == '+' || c == '-') && end > pos && s[end - 1] != 'e' && s[end - 1] != 'E') break;
            ++end;
        }
        std::string_view term = s.substr(pos, end - pos);
        if (term.empty()) bad(text, "dangling sign");
        const bool imag = term.back() == 'i';
        if (imag) term.remove_suffix(1);
        if (!term.empty() && term.back() == '*') term.remove_suffix(1);
        mpq_class value = term.empty() ? mpq_class(1) : parse_magnitude(text, term);
        if (neg) value = -value;
        if (imag) {
            if (seen_imag) bad(text, "two imaginary terms");
            seen_imag = true;
            z.im = value;
        } else {
            if (seen_real || seen_imag) bad(text, "real term must come first");
            seen_real = true;
            z.re = value;
        }
        pos = end;
    }
    return z;
}

ApproxComplex parse_approx_complex(std::string_view text) {
    const GaussianRational z = parse_gaussian_rational(text);
    return z.to_complex();
}

std::string to_string(const mpq_class& q) { return q.get_str(10); }

std::string to_string(const GaussianRational& z) {
    if (z.is_real()) return to_string(z.re);
    std::string out;
    if (sgn(z.re) != 0) out = to_string(z.re);
    if (sgn(z.im) > 0 && !out.empty()) out += '+';
    if (z.im == -1) out += '-';
    else if (z.im != 1) out += to_string(z.im);
    out += 'i';
    return out;
}

std::string to_string(const ApproxComplex& z) {
    char buf[64];
    if (z.imag() == 0.0) {
        std::snprintf(buf, sizeof buf, "%.17g", z.real());
    } else {
        std::snprintf(buf, sizeof buf, "%.17g%+.17gi", z.real(), z.imag());
    }
    return buf;
}

} // namespace specmult
