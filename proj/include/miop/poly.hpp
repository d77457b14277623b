#pragma once

#include <algorithm>
#include <cstddef>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "errors.hpp"
#include "rational.hpp"

namespace miop {

template <class C>
class DensePoly;

template <class C>
bool is_zero_value(const DensePoly<C>& p);

namespace detail {

template <class C>
struct CoeffTraits;

template <>
struct CoeffTraits<Rational> {
    static Rational from_int(long k) { return Rational(k); }
};

template <class C>
struct CoeffTraits<DensePoly<C>> {
    static DensePoly<C> from_int(long k) { return DensePoly<C>(CoeffTraits<C>::from_int(k)); }
};

}  // namespace detail

template <class C>
C coeff_from_int(long k) {
    return detail::CoeffTraits<C>::from_int(k);
}

/// Dense univariate polynomial with coefficients in a commutative ring C,
/// ascending order, trailing zeros trimmed (the zero polynomial is empty).
template <class C>
class DensePoly {
public:
    using coeff_type = C;

    DensePoly() = default;
    explicit DensePoly(std::vector<C> coeffs) : c_(std::move(coeffs)) { trim(); }
    DensePoly(const C& constant) {  // NOLINT: constants promote implicitly
        if (!is_zero_value(constant)) c_.push_back(constant);
    }

    static DensePoly monomial(const C& coef, std::size_t k) {
        std::vector<C> c(k + 1, coeff_from_int<C>(0));
        c[k] = coef;
        return DensePoly(std::move(c));
    }
    static DensePoly x() { return monomial(coeff_from_int<C>(1), 1); }

    [[nodiscard]] bool is_zero() const { return c_.empty(); }
    [[nodiscard]] int degree() const { return static_cast<int>(c_.size()) - 1; }
    [[nodiscard]] std::size_t size() const { return c_.size(); }
    [[nodiscard]] std::span<const C> coeffs() const { return c_; }

    /// Coefficient of x^k, zero beyond the degree.
    [[nodiscard]] C coeff(std::size_t k) const { return k < c_.size() ? c_[k] : coeff_from_int<C>(0); }
    [[nodiscard]] const C& lc() const {
        if (c_.empty()) throw std::logic_error("leading coefficient of zero polynomial");
        return c_.back();
    }

    DensePoly& operator+=(const DensePoly& o) {
        if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), coeff_from_int<C>(0));
        for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] += o.c_[i];
        trim();
        return *this;
    }
    DensePoly& operator-=(const DensePoly& o) {
        if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), coeff_from_int<C>(0));
        for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] -= o.c_[i];
        trim();
        return *this;
    }
    DensePoly& operator*=(const DensePoly& o) { return *this = *this * o; }
    DensePoly& operator*=(const C& s) {
        if (is_zero_value(s)) {
            c_.clear();
            return *this;
        }
        for (auto& c : c_) c *= s;
        trim();
        return *this;
    }

    friend DensePoly operator+(DensePoly a, const DensePoly& b) { return a += b; }
    friend DensePoly operator-(DensePoly a, const DensePoly& b) { return a -= b; }
    friend DensePoly operator-(DensePoly a) {
        for (auto& c : a.c_) c = -c;
        return a;
    }
    friend DensePoly operator*(const DensePoly& a, const DensePoly& b) {
        if (a.is_zero() || b.is_zero()) return {};
        std::vector<C> out(a.c_.size() + b.c_.size() - 1, coeff_from_int<C>(0));
        for (std::size_t i = 0; i < a.c_.size(); ++i) {
            if (is_zero_value(a.c_[i])) continue;
            for (std::size_t j = 0; j < b.c_.size(); ++j) out[i + j] += a.c_[i] * b.c_[j];
        }
        return DensePoly(std::move(out));
    }
    friend DensePoly operator*(DensePoly a, const C& s) { return a *= s; }
    friend DensePoly operator*(const C& s, DensePoly a) { return a *= s; }
    friend bool operator==(const DensePoly& a, const DensePoly& b) { return a.c_ == b.c_; }

    [[nodiscard]] DensePoly derivative() const {
        if (c_.size() <= 1) return {};
        std::vector<C> out;
        out.reserve(c_.size() - 1);
        for (std::size_t k = 1; k < c_.size(); ++k) out.push_back(c_[k] * coeff_from_int<C>(static_cast<long>(k)));
        return DensePoly(std::move(out));
    }

    /// Horner evaluation at a point of the coefficient ring.
    [[nodiscard]] C operator()(const C& x) const {
        C acc = coeff_from_int<C>(0);
        for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + *it;
        return acc;
    }

    /// Maps every coefficient through f; the result is re-trimmed.
    template <class F>
    [[nodiscard]] auto map_coeffs(F&& f) const {
        using D = std::decay_t<decltype(f(std::declval<const C&>()))>;
        std::vector<D> out;
        out.reserve(c_.size());
        for (const auto& c : c_) out.push_back(f(c));
        return DensePoly<D>(std::move(out));
    }

private:
    std::vector<C> c_;

    void trim() {
        while (!c_.empty() && is_zero_value(c_.back())) c_.pop_back();
    }
};

template <class C>
bool is_zero_value(const DensePoly<C>& p) {
    return p.is_zero();
}

template <class C>
DensePoly<C> pow(const DensePoly<C>& p, unsigned e) {
    DensePoly<C> out(coeff_from_int<C>(1));
    DensePoly<C> b = p;
    while (e > 0) {
        if (e & 1U) out *= b;
        e >>= 1U;
        if (e > 0) b *= b;
    }
    return out;
}

/// Polynomials in eta over Q.
using UniPoly = DensePoly<Rational>;

/// Polynomials in eta whose coefficients are polynomials in one free
/// parameter s (g or h). Evaluation at a rational s is coefficientwise.
using ParamPoly = DensePoly<UniPoly>;

inline UniPoly eta() { return UniPoly::x(); }

/// a + b*eta, the shape that appears everywhere below.
inline UniPoly linear(const Rational& a, const Rational& b) { return UniPoly(std::vector<Rational>{a, b}); }

inline UniPoly from_coeffs(std::initializer_list<Rational> c) { return UniPoly(std::vector<Rational>(c)); }

inline double eval_double(const UniPoly& p, double x) {
    double acc = 0.0;
    auto c = p.coeffs();
    for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * x + it->get_d();
    return acc;
}

/// Exact evaluation at a double (treated as the rational it represents),
/// rounded once at the end. Immune to the cancellation of large coefficients.
inline double eval_exact_at(const UniPoly& p, double x) { return p(from_double(x)).get_d(); }

inline UniPoly monic(const UniPoly& p) {
    if (p.is_zero()) return p;
    return p * Rational(1 / p.lc());
}

/// p(a*eta + b).
inline UniPoly compose_linear(const UniPoly& p, const Rational& a, const Rational& b) {
    UniPoly lin = linear(b, a);
    UniPoly acc;
    auto c = p.coeffs();
    for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * lin + UniPoly(*it);
    return acc;
}

/// p(q(eta)).
inline UniPoly compose(const UniPoly& p, const UniPoly& q) {
    UniPoly acc;
    auto c = p.coeffs();
    for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * q + UniPoly(*it);
    return acc;
}

/// Quotient and remainder over Q.
inline std::pair<UniPoly, UniPoly> divmod(const UniPoly& a, const UniPoly& b) {
    if (b.is_zero()) throw DivisionError("division by the zero polynomial");
    if (a.degree() < b.degree()) return {UniPoly{}, a};
    std::vector<Rational> r(a.coeffs().begin(), a.coeffs().end());
    const int db = b.degree();
    std::vector<Rational> q(static_cast<std::size_t>(a.degree() - db + 1));
    const Rational inv = 1 / b.lc();
    auto bc = b.coeffs();
    for (int k = a.degree() - db; k >= 0; --k) {
        Rational t = r[static_cast<std::size_t>(k + db)] * inv;
        q[static_cast<std::size_t>(k)] = t;
        if (sgn(t) == 0) continue;
        for (int j = 0; j <= db; ++j) r[static_cast<std::size_t>(k + j)] -= t * bc[static_cast<std::size_t>(j)];
    }
    r.resize(static_cast<std::size_t>(db));
    return {UniPoly(std::move(q)), UniPoly(std::move(r))};
}

/// Quotient a/b; throws DivisionError unless the remainder vanishes.
inline UniPoly exact_div(const UniPoly& a, const UniPoly& b) {
    auto [q, r] = divmod(a, b);
    if (!r.is_zero()) throw DivisionError("polynomial division leaves a nonzero remainder");
    return q;
}

/// Exact quotient in the coefficient ring, used by the subresultant PRS.
inline Rational exact_quotient(const Rational& a, const Rational& b) {
    if (sgn(b) == 0) throw DivisionError("division by zero");
    return a / b;
}
inline UniPoly exact_quotient(const UniPoly& a, const UniPoly& b) { return exact_div(a, b); }

/// Coefficientwise substitution s -> value.
inline UniPoly at_param(const ParamPoly& p, const Rational& s) {
    return p.map_coeffs([&](const UniPoly& c) { return c(s); });
}

/// Evaluation in eta, leaving a polynomial in the parameter.
inline UniPoly at_eta(const ParamPoly& p, const Rational& x) {
    UniPoly acc;
    auto c = p.coeffs();
    for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * x + *it;
    return acc;
}

/// Largest k with (eta - r)^k dividing p, and the cofactor.
inline std::pair<int, UniPoly> strip_root(UniPoly p, const Rational& r) {
    if (p.is_zero()) return {0, p};
    int k = 0;
    const UniPoly lin = linear(-r, 1);
    while (p.degree() > 0 && is_zero_value(p(r))) {
        p = exact_div(p, lin);
        ++k;
    }
    return {k, p};
}

inline std::string to_string(const UniPoly& p, const std::string& var = "eta") {
    if (p.is_zero()) return "0";
    std::string out;
    for (int k = p.degree(); k >= 0; --k) {
        const Rational& c = p.coeffs()[static_cast<std::size_t>(k)];
        if (sgn(c) == 0) continue;
        Rational a = abs(c);
        if (out.empty()) {
            if (sgn(c) < 0) out += "-";
        } else {
            out += sgn(c) < 0 ? " - " : " + ";
        }
        const bool unit = a == 1;
        if (!unit || k == 0) out += to_short_string(a);
        if (k > 0) {
            if (!unit) out += "*";
            out += var;
            if (k > 1) out += "^" + std::to_string(k);
        }
    }
    return out;
}

}  // namespace miop
