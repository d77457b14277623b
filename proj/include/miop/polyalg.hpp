#pragma once

#include <algorithm>
#include <utility>
#include <vector>

#include "poly.hpp"

namespace miop {

/// Monic gcd over Q (Euclid with monic remainders; degrees here stay small).
inline UniPoly gcd(UniPoly a, UniPoly b) {
    if (a.is_zero() && b.is_zero()) throw std::invalid_argument("gcd(0, 0) is undefined");
    while (!b.is_zero()) {
        UniPoly r = divmod(a, b).second;
        a = std::move(b);
        b = monic(r);
    }
    return monic(a);
}

struct SquarefreeFactor {
    UniPoly factor;  // monic, square-free
    int multiplicity;
};

struct SquarefreeDecomposition {
    Rational lead;  // p = lead * prod factor^multiplicity
    std::vector<SquarefreeFactor> factors;
};

/// Yun's algorithm. Factors are monic, pairwise coprime, multiplicities increase.
inline SquarefreeDecomposition squarefree_decompose(const UniPoly& p) {
    if (p.is_zero()) throw std::invalid_argument("square-free decomposition of zero");
    SquarefreeDecomposition out{p.lc(), {}};
    if (p.degree() == 0) return out;
    UniPoly f = monic(p);
    UniPoly fp = f.derivative();
    UniPoly a = gcd(f, fp);
    UniPoly b = exact_div(f, a);
    UniPoly c = exact_div(fp, a);
    UniPoly d = c - b.derivative();
    for (int i = 1; b.degree() > 0; ++i) {
        UniPoly ai = gcd(b, d);
        b = exact_div(b, ai);
        c = exact_div(d, ai);
        d = c - b.derivative();
        if (ai.degree() > 0) out.factors.push_back({ai, i});
    }
    return out;
}

/// Product of the distinct monic irreducible-free parts, i.e. rad(p).
inline UniPoly squarefree_part(const UniPoly& p) { return monic(exact_div(p, gcd(p, p.derivative()))); }

/// lc(B)^(degA-degB+1) * A mod B, computed without leaving the ring.
template <class R>
DensePoly<R> pseudo_remainder(DensePoly<R> a, const DensePoly<R>& b) {
    if (b.is_zero()) throw DivisionError("pseudo-remainder by zero");
    const int db = b.degree();
    int e = a.degree() - db + 1;
    const R lb = b.lc();
    while (!a.is_zero() && a.degree() >= db) {
        const int shift = a.degree() - db;
        DensePoly<R> t = DensePoly<R>::monomial(a.lc(), static_cast<std::size_t>(shift));
        a = a * lb - t * b;
        --e;
    }
    for (; e > 0; --e) a *= lb;
    return a;
}

template <class R>
R ring_pow(const R& x, long e) {
    R out = coeff_from_int<R>(1);
    for (long i = 0; i < e; ++i) out = out * x;
    return out;
}

/// Resultant by the subresultant PRS (Cohen, Algorithm 3.3.7) over a domain R
/// with exact division; R is Rational or UniPoly.
template <class R>
R resultant(DensePoly<R> a, DensePoly<R> b) {
    if (a.is_zero() || b.is_zero()) return coeff_from_int<R>(0);
    R s = coeff_from_int<R>(1);
    if (a.degree() < b.degree()) {
        std::swap(a, b);
        if ((a.degree() % 2 == 1) && (b.degree() % 2 == 1)) s = -s;
    }
    if (b.degree() == 0) return s * ring_pow(b.lc(), a.degree());
    R g = coeff_from_int<R>(1);
    R h = coeff_from_int<R>(1);
    while (true) {
        const long delta = a.degree() - b.degree();
        if ((a.degree() % 2 == 1) && (b.degree() % 2 == 1)) s = -s;
        DensePoly<R> r = pseudo_remainder(a, b);
        a = std::move(b);
        if (r.is_zero()) return coeff_from_int<R>(0);
        const R den = g * ring_pow(h, delta);
        b = r.map_coeffs([&](const R& c) { return exact_quotient(c, den); });
        g = a.lc();
        if (delta == 0) {
            // h unchanged
        } else if (delta == 1) {
            h = g;
        } else {
            h = exact_quotient(ring_pow(g, delta), ring_pow(h, delta - 1));
        }
        if (b.degree() <= 0) break;
    }
    const long da = a.degree();
    if (da == 0) return s * b.lc();
    R hh = exact_quotient(ring_pow(b.lc(), da), ring_pow(h, da - 1));
    return s * hh;
}

/// disc(p) = (-1)^(n(n-1)/2) Res(p, p') / lc(p).
template <class R>
R discriminant(const DensePoly<R>& p) {
    if (p.degree() < 1) throw std::invalid_argument("discriminant needs degree >= 1");
    const long n = p.degree();
    R res = resultant(p, p.derivative());
    R d = exact_quotient(res, p.lc());
    if ((n * (n - 1) / 2) % 2 == 1) d = -d;
    return d;
}

/// Discriminant of the specialization p(eta; s). Throws when the leading
/// coefficient vanishes at s, where the generic formula no longer applies.
inline Rational discriminant_at(const ParamPoly& p, const Rational& s) {
    if (p.is_zero()) throw DegenerateLeadError("zero polynomial");
    if (is_zero_value(p.lc()(s))) throw DegenerateLeadError("leading coefficient vanishes at s = " + to_string(s));
    return discriminant(at_param(p, s));
}

/// Lowest-terms integer polynomial proportional to p, with positive lead.
inline std::vector<Integer> primitive_integer(const UniPoly& p) {
    Integer l(1);
    for (const auto& c : p.coeffs()) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), c.get_den_mpz_t());
    std::vector<Integer> z;
    z.reserve(p.size());
    Integer g(0);
    for (const auto& c : p.coeffs()) {
        Integer v = c.get_num() * (l / c.get_den());
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), v.get_mpz_t());
        z.push_back(v);
    }
    if (sgn(z.back()) < 0) g = -g;
    for (auto& v : z) v /= g;
    return z;
}

namespace detail {

inline std::vector<UniPoly> sturm_sequence(const UniPoly& p) {
    std::vector<UniPoly> seq{p, p.derivative()};
    while (!seq.back().is_zero()) {
        UniPoly r = divmod(seq[seq.size() - 2], seq.back()).second;
        if (r.is_zero()) break;
        seq.push_back(-r);
    }
    return seq;
}

inline int sign_changes(const std::vector<UniPoly>& seq, const Rational& x) {
    int changes = 0, last = 0;
    for (const auto& q : seq) {
        int s = sgn(q(x));
        if (s == 0) continue;
        if (last != 0 && s != last) ++changes;
        last = s;
    }
    return changes;
}

// Roots of a square-free p in (lo, hi], all returned exactly when rational.
inline void isolate(const UniPoly& p, const std::vector<UniPoly>& seq, const Integer& lead, Rational lo, Rational hi,
                    int vlo, int vhi, std::vector<Rational>& out) {
    const int count = vlo - vhi;
    if (count == 0) return;
    if (count == 1 && (hi - lo) * lead < 1) {
        // a rational root r = u/v has v | lead, so lead*r is an integer
        Rational k0 = floor_q(lo * lead) + 1;
        Rational k1 = floor_q(hi * lead);
        for (Rational k = k0; k <= k1; k += 1) {
            Rational r = k / lead;
            if (is_zero_value(p(r))) {
                out.push_back(r);
                return;
            }
        }
        return;
    }
    Rational mid = (lo + hi) / 2;
    int vmid = sign_changes(seq, mid);
    isolate(p, seq, lead, lo, mid, vlo, vmid, out);
    isolate(p, seq, lead, mid, hi, vmid, vhi, out);
}

}  // namespace detail

struct RationalRoot {
    Rational value;
    int multiplicity;
};

/// All rational roots with multiplicity, ascending. Complete over Q: real
/// roots are isolated exactly by a Sturm sequence and each isolating
/// interval is narrowed until only candidates k/lead remain.
inline std::vector<RationalRoot> rational_roots(const UniPoly& p) {
    if (p.is_zero()) throw std::invalid_argument("rational roots of zero");
    std::vector<RationalRoot> out;
    for (const auto& [f, mult] : squarefree_decompose(p).factors) {
        auto z = primitive_integer(f);
        std::vector<Rational> zc(z.begin(), z.end());
        UniPoly q(std::move(zc));
        const Integer lead = z.back();
        Rational bound(0);
        for (std::size_t i = 0; i + 1 < z.size(); ++i) bound = std::max(bound, frac(abs(z[i]), abs(lead)));
        bound += 1;
        auto seq = detail::sturm_sequence(q);
        std::vector<Rational> roots;
        Rational lo = -bound, hi = bound;
        detail::isolate(q, seq, lead, lo, hi, detail::sign_changes(seq, lo), detail::sign_changes(seq, hi), roots);
        for (auto& r : roots) out.push_back({r, mult});
    }
    std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.value < b.value; });
    return out;
}

/// Newton interpolation through (xs[i], ys[i]); xs distinct.
inline UniPoly interpolate(const std::vector<Rational>& xs, const std::vector<Rational>& ys) {
    if (xs.size() != ys.size() || xs.empty()) throw std::invalid_argument("interpolate: bad sample sets");
    const std::size_t n = xs.size();
    std::vector<Rational> dd(ys);
    for (std::size_t j = 1; j < n; ++j)
        for (std::size_t i = n - 1; i >= j; --i) {
            dd[i] = (dd[i] - dd[i - 1]) / (xs[i] - xs[i - j]);
            if (i == j) break;
        }
    UniPoly acc(dd[n - 1]);
    for (std::size_t i = n - 1; i-- > 0;) acc = acc * linear(-xs[i], 1) + UniPoly(dd[i]);
    return acc;
}

}  // namespace miop
