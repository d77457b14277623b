#pragma once

#include <gmpxx.h>

#include <cmath>
#include <stdexcept>
#include <string>
#include <string_view>

namespace miop {

using Integer = mpz_class;
using Rational = mpq_class;

inline bool is_zero_value(const Rational& r) { return sgn(r) == 0; }

inline bool is_integer(const Rational& r) { return r.get_den() == 1; }

/// a/b in lowest terms (the two-argument mpq_class constructor does not reduce).
inline Rational frac(const Integer& a, const Integer& b) {
    if (b == 0) throw std::domain_error("zero denominator");
    Rational r(a, b);
    r.canonicalize();
    return r;
}

/// Parses "p/q", "p" or a plain decimal such as "-2.5" or "1e6" exactly.
inline Rational parse_rational(std::string_view text) {
    std::string s(text);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.pop_back();
    std::size_t b = 0;
    while (b < s.size() && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    s = s.substr(b);
    if (s.empty()) throw std::invalid_argument("empty rational");

    auto bad = [&] { return std::invalid_argument("not a rational number: '" + s + "'"); };

    if (s.find_first_of(".eE") != std::string::npos && s.find('/') == std::string::npos) {
        // decimal with optional exponent, converted without rounding
        std::string mant = s, expo;
        if (auto e = s.find_first_of("eE"); e != std::string::npos) {
            mant = s.substr(0, e);
            expo = s.substr(e + 1);
        }
        bool neg = false;
        if (!mant.empty() && (mant[0] == '-' || mant[0] == '+')) {
            neg = mant[0] == '-';
            mant = mant.substr(1);
        }
        std::string digits;
        long frac = 0;
        bool dot = false;
        for (char c : mant) {
            if (c == '.') {
                if (dot) throw bad();
                dot = true;
            } else if (std::isdigit(static_cast<unsigned char>(c))) {
                digits += c;
                if (dot) ++frac;
            } else {
                throw bad();
            }
        }
        if (digits.empty()) throw bad();
        long ex = 0;
        if (!expo.empty()) {
            try {
                std::size_t used = 0;
                ex = std::stol(expo, &used);
                if (used != expo.size()) throw bad();
            } catch (const std::logic_error&) {
                throw bad();
            }
        }
        Integer num(digits, 10);
        if (neg) num = -num;
        long shift = ex - frac;
        Integer p10;
        mpz_ui_pow_ui(p10.get_mpz_t(), 10, static_cast<unsigned long>(shift < 0 ? -shift : shift));
        Rational r = shift >= 0 ? Rational(num * p10) : Rational(num, p10);
        r.canonicalize();
        return r;
    }

    Rational r;
    if (s[0] == '+') s = s.substr(1);
    for (std::size_t i = 0; i < s.size(); ++i) {
        char c = s[i];
        bool ok = std::isdigit(static_cast<unsigned char>(c)) || (c == '-' && (i == 0 || s[i - 1] == '/')) ||
                  (c == '/' && i > 0);
        if (!ok) throw bad();
    }
    if (r.set_str(s, 10) != 0) throw bad();
    if (r.get_den() == 0) throw std::invalid_argument("zero denominator in '" + s + "'");
    r.canonicalize();
    return r;
}

/// Always "num/den", the form used by every serializer in the library.
inline std::string to_string(const Rational& r) {
    return r.get_num().get_str() + "/" + r.get_den().get_str();
}

/// "num" for integers, "num/den" otherwise; for human-facing text.
inline std::string to_short_string(const Rational& r) {
    return is_integer(r) ? r.get_num().get_str() : to_string(r);
}

inline double to_double(const Rational& r) { return r.get_d(); }

/// Exact conversion of a finite double (binary fractions are rationals).
inline Rational from_double(double x) {
    if (!std::isfinite(x)) throw std::invalid_argument("non-finite double");
    Rational r(x);
    r.canonicalize();
    return r;
}

inline Rational pow(const Rational& base, long e) {
    if (e < 0) {
        if (sgn(base) == 0) throw std::domain_error("0 to a negative power");
        Rational inv = 1 / base;
        return pow(inv, -e);
    }
    Rational out(1);
    Rational b = base;
    while (e > 0) {
        if (e & 1) out *= b;
        b *= b;
        e >>= 1;
    }
    return out;
}

inline Rational floor_q(const Rational& r) {
    Integer q;
    mpz_fdiv_q(q.get_mpz_t(), r.get_num_mpz_t(), r.get_den_mpz_t());
    return Rational(q);
}

inline Rational ceil_q(const Rational& r) {
    Integer q;
    mpz_cdiv_q(q.get_mpz_t(), r.get_num_mpz_t(), r.get_den_mpz_t());
    return Rational(q);
}

}  // namespace miop
