#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "confluence.hpp"

namespace miop {

/// p2 y'' + p1 y' + p0 y = 0. Normalized: no common factor, p2 monic.
struct PolyODE {
    UniPoly p2, p1, p0;
    std::string caseId;
    long n = 0;
    Rational h;

    /// Equal up to an overall constant (always true after normalization).
    friend bool operator==(const PolyODE& a, const PolyODE& b) { return a.p2 == b.p2 && a.p1 == b.p1 && a.p0 == b.p0; }
};

inline UniPoly residual(const PolyODE& ode, const UniPoly& y) {
    const UniPoly y1 = y.derivative();
    return ode.p2 * y1.derivative() + ode.p1 * y1 + ode.p0 * y;
}

/// Numerator of the residual for a rational y (zero iff y solves).
inline UniPoly residual(const PolyODE& ode, const RatFunc& y) {
    const RatFunc y1 = y.derivative(), y2 = y1.derivative();
    return (RatFunc(ode.p2) * y2 + RatFunc(ode.p1) * y1 + RatFunc(ode.p0) * y).num();
}

/// Clears denominators of c2 y'' + c1 y' + c0 y and normalizes.
inline PolyODE make_ode(const RatFunc& c2, const RatFunc& c1, const RatFunc& c0) {
    if (c2.is_zero()) throw std::invalid_argument("leading coefficient of the ODE vanishes");
    UniPoly l = c2.den();
    for (const RatFunc* c : {&c1, &c0}) l = exact_div(l * c->den(), gcd(l, c->den()));
    PolyODE ode;
    ode.p2 = c2.num() * exact_div(l, c2.den());
    ode.p1 = c1.num() * exact_div(l, c1.den());
    ode.p0 = c0.num() * exact_div(l, c0.den());
    UniPoly g = gcd(ode.p2, ode.p1);
    if (!ode.p0.is_zero()) g = gcd(g, ode.p0);
    if (g.degree() > 0) {
        ode.p2 = exact_div(ode.p2, g);
        ode.p1 = exact_div(ode.p1, g);
        ode.p0 = exact_div(ode.p0, g);
    }
    const Rational inv = 1 / ode.p2.lc();
    ode.p2 *= inv;
    ode.p1 *= inv;
    ode.p0 *= inv;
    return ode;
}

inline PolyODE make_ode(const UniPoly& p2, const UniPoly& p1, const UniPoly& p0) {
    return make_ode(RatFunc(p2), RatFunc(p1), RatFunc(p0));
}

namespace detail {

struct RatODE {
    RatFunc c2, c1, c0;
};

// Coefficients for P when y = P / w.
inline RatODE divide_by(const RatODE& y, const UniPoly& w) {
    const RatFunc r1(w.derivative(), w), r2(w.derivative().derivative(), w);
    const RatFunc two(Rational(2));
    return {y.c2, y.c1 - two * y.c2 * r1, y.c2 * (two * r1 * r1 - r2) - y.c1 * r1 + y.c0};
}

inline void tag(PolyODE& ode, const ConfluentFamily& fam, long n) {
    ode.caseId = fam.caseId.value_or("");
    ode.n = n;
    ode.h = fam.base.params.h;
}

// Eigenfunction route: conjugate H - E_n by (1-eta)^(gbar/2) (1+eta)^(hbar/2).
inline RatODE y_equation_from_potential(const ConfluentFamily& fam, long n) {
    const DeformedSystem& s = fam.base;
    const RatFunc u = deformed_potential(s).as_ratfunc();
    const Rational e = eigen_energy(n, s.params);
    const RatFunc a = RatFunc(UniPoly(Rational(-s.gbar / 2)), linear(1, -1)) + RatFunc(UniPoly(s.hbar / 2), linear(1, 1));
    const RatFunc b = a.derivative() + a * a;
    const RatFunc one_minus_sq(from_coeffs({1, 0, -1}));
    const RatFunc x(eta());
    const RatFunc four(Rational(4));
    return {-four * one_minus_sq, Rational(-8) * one_minus_sq * a + four * x,
            -four * one_minus_sq * b + four * x * a + u - RatFunc(e)};
}

// Closed form in terms of gbar, hbar, L and D.
inline RatODE y_equation_closed(const ConfluentFamily& fam, long n) {
    const DeformedSystem& s = fam.base;
    const UniPoly& d = s.den;
    const UniPoly d1 = d.derivative(), d2 = d1.derivative();
    const RatFunc bterm = RatFunc(from_coeffs({1, 0, -1}) * (d1 * d1 - d * d2), d * d) + RatFunc(eta() * d1, d);
    const Rational nl = Rational(n + s.counts.L);
    const Rational eig = nl * (nl + s.gbar + s.hbar);
    return {RatFunc(from_coeffs({1, 0, -1})), RatFunc(linear(s.hbar - s.gbar, -(s.gbar + s.hbar + 1))),
            RatFunc(eig) - RatFunc(Rational(2)) * bterm};
}

}  // namespace detail

/// ODE for y_n = P_n / w derived from the deformed potential and E_n.
inline PolyODE ode_for_y(const ConfluentFamily& fam, long n) {
    const auto c = detail::y_equation_from_potential(fam, n);
    PolyODE ode = make_ode(c.c2, c.c1, c.c0);
    detail::tag(ode, fam, n);
    return ode;
}

/// Same ODE from the closed form (1-eta^2) y'' + (hb - gb - (gb+hb+1) eta) y'
/// + ((n+L)(n+gb+hb+L) - 2B) y = 0.
inline PolyODE ode_for_y_closed(const ConfluentFamily& fam, long n) {
    const auto c = detail::y_equation_closed(fam, n);
    PolyODE ode = make_ode(c.c2, c.c1, c.c0);
    detail::tag(ode, fam, n);
    return ode;
}

inline PolyODE ode_for_P(const ConfluentFamily& fam, long n) {
    const auto c = detail::divide_by(detail::y_equation_from_potential(fam, n), fam.w);
    PolyODE ode = make_ode(c.c2, c.c1, c.c0);
    detail::tag(ode, fam, n);
    return ode;
}

/// Group closed forms of the P_n equation, in (gbar, hbar, n) and gamma.
inline PolyODE ode_for_P_closed(Group group, const Rational& gb, const Rational& hb, long nn, const Rational& gamma) {
    const Rational n(nn);
    const UniPoly e = eta();
    const UniPoly one(Rational(1));
    const UniPoly em1 = linear(-1, 1), ep1 = linear(1, 1), esq1 = from_coeffs({-1, 0, 1});
    if (group == Group::I || group == Group::II) {
        UniPoly c0 = one * (1 + 2 * n + n * n) - em1 * (2 * hb * hb * (3 + n)) + e * (-6 + 4 * n + 2 * n * n) +
                     (UniPoly(Rational(-1)) + linear(5 * n, -2 * n) - em1 * (2 * n * n) + e * Rational(12)) * hb +
                     (linear(5 + n, 6 + 2 * n) - (one + em1 * n + e * Rational(3)) * (2 * hb)) * gb;
        const UniPoly lin = linear(-1, -2) + em1 * (2 * hb);
        UniPoly c1 = from_coeffs({-8, -1, 6}) + em1 * em1 * (2 * hb * hb) + lin * ep1 * gb - em1 * linear(9, 8) * hb;
        UniPoly c2 = lin * esq1;
        return make_ode(c2, c1, c0);
    }
    if (group == Group::III || group == Group::IV) {
        const Rational k = gamma + 2 * n;
        UniPoly c0 = -(one * (3 * k * k) + (one * (3 * k) - e * Rational(16) + em1 * (k * k)) * (2 * hb) +
                       em1 * (4 * hb * hb * (4 + gamma + 2 * n)) +
                       (one * (3 * k) + (ep1 * Rational(4) + em1 * k) * (2 * hb)) * (2 * gb));
        const UniPoly lin = UniPoly(Rational(3)) + em1 * (2 * hb);
        UniPoly c1 = (em1 * em1 * (2 * hb * hb) + e * Rational(3) + lin * ep1 * gb - linear(5, 6) * em1 * hb) * Rational(4);
        UniPoly c2 = lin * esq1 * Rational(4);
        return make_ode(c2, c1, c0);
    }
    throw std::invalid_argument("closed-form P equation exists only for Groups I-IV");
}

inline PolyODE ode_for_P_closed(const ConfluentFamily& fam, long n) {
    PolyODE ode = ode_for_P_closed(fam.group, fam.base.gbar, fam.base.hbar, n, fam.gamma);
    detail::tag(ode, fam, n);
    return ode;
}

// ---- Heun form --------------------------------------------------------------

/// f'' + (gamma/z + delta/(z-1) + epsilon/(z-t)) f' + (alpha beta z - q)/(z(z-1)(z-t)) f = 0.
struct HeunParams {
    Rational gamma, delta, epsilon, alpha, beta, t, q, q_r;
};

inline nlohmann::json to_json(const HeunParams& hp) {
    return {{"gamma", to_string(hp.gamma)}, {"delta", to_string(hp.delta)}, {"epsilon", to_string(hp.epsilon)},
            {"alpha", to_string(hp.alpha)}, {"beta", to_string(hp.beta)},     {"t", to_string(hp.t)},
            {"q", to_string(hp.q)},         {"q_r", to_string(hp.q_r)}};
}

/// Reads Heun parameters after eta = 1 - 2z, for a polynomial solution of the given degree.
inline HeunParams to_heun(const PolyODE& ode, int degree) {
    const UniPoly p2 = compose_linear(ode.p2, Rational(-2), Rational(1));
    const UniPoly p1 = compose_linear(ode.p1, Rational(-2), Rational(1));
    const UniPoly p0 = compose_linear(ode.p0, Rational(-2), Rational(1));
    // d/d eta = -1/2 d/dz
    const RatFunc r1(p1 * Rational(-2), p2), r0(p0 * Rational(4), p2);
    const UniPoly& den = r1.den();
    if (den.degree() != 3 || squarefree_part(den).degree() != 3) throw DomainError("not a four-point Fuchsian equation");
    auto roots = rational_roots(den);
    if (roots.size() != 3) throw DomainError("singular point t is not rational");
    std::optional<Rational> t;
    bool has0 = false, has1 = false;
    for (const auto& r : roots) {
        if (r.value == 0) has0 = true;
        else if (r.value == 1) has1 = true;
        else t = r.value;
    }
    if (!has0 || !has1 || !t) throw DomainError("z = 0 and z = 1 must be singular");
    if (r1.num().degree() > 2) throw DomainError("infinity is not a regular singular point");
    HeunParams hp;
    hp.t = *t;
    const UniPoly dd = den.derivative();
    hp.gamma = r1.num()(Rational(0)) / dd(Rational(0));
    hp.delta = r1.num()(Rational(1)) / dd(Rational(1));
    hp.epsilon = r1.num()(hp.t) / dd(hp.t);
    const UniPoly cubic = from_coeffs({0, 1}) * linear(-1, 1) * linear(-hp.t, 1);
    const RatFunc top = r0 * RatFunc(cubic);
    if (!top.is_polynomial() || top.num().degree() > 1) throw DomainError("potential term is not of Heun type");
    const UniPoly tn = top.num() * Rational(1 / top.den().lc());
    const Rational ab = tn.coeff(1);
    hp.q = -tn.coeff(0);
    hp.alpha = -degree;
    hp.beta = hp.gamma + hp.delta + hp.epsilon - 1 - hp.alpha;
    if (hp.alpha * hp.beta != ab)
        throw FuchsViolation("exponents at infinity " + to_string(hp.alpha) + ", " + to_string(hp.beta) +
                             " do not multiply to " + to_string(ab));
    hp.q_r = hp.q - ab * hp.t;
    return hp;
}

inline HeunParams to_heun(const ConfluentFamily& fam, long n) {
    return to_heun(ode_for_P(fam, n), family_mode(fam, n).degree());
}

/// The n-independent part of q stated for the group families.
inline Rational expected_qr(Group group, const Rational& gb, const Rational& hb) {
    if (group == Group::I || group == Group::II) return (2 + gb + hb - 4 * gb * hb) / (2 * (hb - 1));
    if (group == Group::III || group == Group::IV) return (-6 + gb * (3 - 4 * hb) + 7 * hb) / (2 * hb);
    throw std::invalid_argument("no closed form for q_r outside Groups I-IV");
}

/// Heun data for n = 0..n_max; throws QrDriftError if q_r moves with n.
inline std::vector<HeunParams> heun_series(const ConfluentFamily& fam, long n_max) {
    std::vector<HeunParams> out;
    for (long n = 0; n <= n_max; ++n) {
        out.push_back(to_heun(fam, n));
        if (out.back().q_r != out.front().q_r)
            throw QrDriftError("q_r changes from " + to_string(out.front().q_r) + " to " + to_string(out.back().q_r) +
                               " at n = " + std::to_string(n));
    }
    return out;
}

/// Frobenius obstruction of p2 y'' + p1 y' + p0 y = 0 at a simple zero x0 of p2,
/// for the exponent 0 when the other exponent s is a positive integer.
/// Zero iff the solution with exponent 0 has no logarithm.
inline Rational apparency_obstruction(const PolyODE& ode, const Rational& x0) {
    const UniPoly a = compose_linear(ode.p2, Rational(1), x0);
    const UniPoly b = compose_linear(ode.p1, Rational(1), x0);
    const UniPoly c = compose_linear(ode.p0, Rational(1), x0);
    if (!is_zero_value(a.coeff(0)) || is_zero_value(a.coeff(1))) throw std::invalid_argument("x0 is not a simple zero of p2");
    const Rational s = 1 - b.coeff(0) / a.coeff(1);
    if (!is_integer(s) || sgn(s) <= 0) throw std::invalid_argument("exponent difference is not a positive integer");
    const long smax = s.get_num().get_si();
    // order u^(k-1): sum_j c_j [j(j-1) a_(k+1-j) + j b_(k-j) + c_(k-1-j)]
    auto coef = [&](long k, long j) {
        Rational v = Rational(j * (j - 1)) * a.coeff(static_cast<int>(k + 1 - j));
        v += Rational(j) * b.coeff(static_cast<int>(k - j));
        if (k - 1 - j >= 0) v += c.coeff(static_cast<int>(k - 1 - j));
        return v;
    };
    std::vector<Rational> cs{Rational(1)};
    for (long k = 1; k <= smax; ++k) {
        Rational rest(0);
        for (long j = 0; j < k; ++j) rest += cs[static_cast<std::size_t>(j)] * coef(k, j);
        if (k == smax) return rest;
        const Rational lead = coef(k, k);
        if (is_zero_value(lead)) throw std::logic_error("unexpected resonance below the exponent difference");
        cs.push_back(-rest / lead);
    }
    return {};
}

inline bool apparency_check(const PolyODE& ode, const Rational& x0) { return is_zero_value(apparency_obstruction(ode, x0)); }

/// Finite rational singular points other than eta = +-1, each with its apparency verdict.
inline std::vector<std::pair<Rational, bool>> apparent_points(const PolyODE& ode) {
    std::vector<std::pair<Rational, bool>> out;
    for (const auto& r : rational_roots(ode.p2)) {
        if (r.value == 1 || r.value == -1) continue;
        out.emplace_back(r.value, apparency_check(ode, r.value));
    }
    return out;
}

/// The Heun equation in z as a polynomial ODE.
inline PolyODE heun_ode(const HeunParams& hp) {
    const UniPoly z = eta(), z1 = linear(-1, 1), zt = linear(-hp.t, 1);
    return make_ode(z * z1 * zt, z1 * zt * hp.gamma + z * zt * hp.delta + z * z1 * hp.epsilon, linear(-hp.q, hp.alpha * hp.beta));
}

/// Obstruction at z = t; the exponents there are 0 and 1 - epsilon.
inline Rational apparency_obstruction(const HeunParams& hp) { return apparency_obstruction(heun_ode(hp), hp.t); }

inline bool apparency_check(const HeunParams& hp) { return is_zero_value(apparency_obstruction(hp)); }

/// Basis of polynomial solutions of degree <= max_deg.
inline std::vector<UniPoly> polynomial_kernel(const PolyODE& ode, int max_deg) {
    std::vector<UniPoly> images;
    int rows = 0;
    for (int k = 0; k <= max_deg; ++k) {
        images.push_back(residual(ode, UniPoly::monomial(Rational(1), static_cast<std::size_t>(k))));
        rows = std::max(rows, images.back().degree() + 1);
    }
    QMatrix m(static_cast<std::size_t>(std::max(rows, 1)), static_cast<std::size_t>(max_deg + 1));
    for (int k = 0; k <= max_deg; ++k)
        for (int i = 0; i <= images[static_cast<std::size_t>(k)].degree(); ++i)
            m(static_cast<std::size_t>(i), static_cast<std::size_t>(k)) = images[static_cast<std::size_t>(k)].coeff(i);
    std::vector<UniPoly> out;
    for (auto& v : m.nullspace()) out.push_back(UniPoly(std::move(v)));
    return out;
}

/// a = c b for some nonzero constant c.
inline std::optional<Rational> proportionality(const UniPoly& a, const UniPoly& b) {
    if (a.is_zero() || b.is_zero() || a.degree() != b.degree()) return std::nullopt;
    const Rational c = a.lc() / b.lc();
    if (a != b * c) return std::nullopt;
    return c;
}

inline nlohmann::json to_json(const PolyODE& ode) {
    return {{"caseId", ode.caseId}, {"n", ode.n}, {"h", to_string(ode.h)},
            {"p2", poly_to_json(ode.p2)}, {"p1", poly_to_json(ode.p1)}, {"p0", poly_to_json(ode.p0)}};
}

}  // namespace miop
