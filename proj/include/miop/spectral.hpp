#pragma once

#include <cmath>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "quasifunc.hpp"

namespace miop {

/// Couplings of U = g(g-1)/sin^2 x + h(h-1)/cos^2 x - (g+h)^2.
struct PTParams {
    Rational g;
    Rational h;
};

enum class SeedKind { I, II, III };

struct SeedSpec {
    SeedKind kind;
    int v;

    friend bool operator==(const SeedSpec&, const SeedSpec&) = default;
};

inline std::string to_string(SeedKind k) {
    switch (k) {
        case SeedKind::I: return "I";
        case SeedKind::II: return "II";
        case SeedKind::III: return "III";
    }
    return "?";
}

inline std::string to_string(const SeedSpec& s) { return to_string(s.kind) + std::to_string(s.v); }

/// "I2", "II1", "III2".
inline SeedSpec parse_seed(std::string_view text) {
    std::size_t i = 0;
    while (i < text.size() && text[i] == 'I') ++i;
    if (i == 0 || i > 3 || i == text.size()) throw std::invalid_argument("bad seed '" + std::string(text) + "'");
    int v = 0;
    for (std::size_t k = i; k < text.size(); ++k) {
        if (!std::isdigit(static_cast<unsigned char>(text[k]))) throw std::invalid_argument("bad seed '" + std::string(text) + "'");
        v = v * 10 + (text[k] - '0');
    }
    if (v < 1) throw std::invalid_argument("seed index must be >= 1");
    return {static_cast<SeedKind>(i - 1), v};
}

inline std::vector<SeedSpec> parse_seeds(std::string_view csv) {
    std::vector<SeedSpec> out;
    std::size_t start = 0;
    while (start <= csv.size()) {
        auto end = csv.find(',', start);
        if (end == std::string_view::npos) end = csv.size();
        if (end > start) out.push_back(parse_seed(csv.substr(start, end - start)));
        start = end + 1;
    }
    return out;
}

/// Rising factorial (a)_k.
inline Rational pochhammer(const Rational& a, long k) {
    Rational out(1);
    for (long i = 0; i < k; ++i) out *= a + i;
    return out;
}

inline Rational factorial(long n) { return pochhammer(Rational(1), n); }

/// P_n^(alpha,beta)(eta) from the terminating hypergeometric sum
/// (alpha+1)_n/n! sum_k (-n)_k (n+alpha+beta+1)_k / (k! (alpha+1)_k) ((1-eta)/2)^k,
/// with (alpha+1)_n/(alpha+1)_k written as (alpha+k+1)_(n-k) so that every
/// rational alpha is allowed.
inline UniPoly jacobi_poly(long n, const Rational& alpha, const Rational& beta) {
    const UniPoly half_one_minus = from_coeffs({Rational(1, 2), Rational(-1, 2)});
    UniPoly acc;
    UniPoly power(Rational(1));
    const Rational nf = factorial(n);
    for (long k = 0; k <= n; ++k) {
        Rational c = pochhammer(alpha + k + 1, n - k) * pochhammer(Rational(-n), k) * pochhammer(n + alpha + beta + 1, k) /
                     (nf * factorial(k));
        acc += power * c;
        power *= half_one_minus;
    }
    return acc;
}

/// L_n^(alpha)(x) = sum_k (-1)^k binom(n+alpha, n-k) x^k / k!.
inline UniPoly laguerre_poly(long n, const Rational& alpha) {
    std::vector<Rational> c;
    for (long k = 0; k <= n; ++k) {
        Rational v = pochhammer(alpha + k + 1, n - k) / (factorial(n - k) * factorial(k));
        c.push_back(k % 2 == 0 ? v : Rational(-v));
    }
    return UniPoly(std::move(c));
}

struct SpectralState {
    QuasiRational f;
    Rational energy;
};

inline Rational eigen_energy(long n, const PTParams& p) { return 4 * Rational(n) * (n + p.g + p.h); }

/// phi_n in eta form: (1-eta)^(g/2) (1+eta)^(h/2) P_n^(g-1/2,h-1/2).
inline SpectralState eigenfunction(long n, const PTParams& p) {
    const Rational half(1, 2);
    return {QuasiRational(Rational(1), p.g / 2, p.h / 2, jacobi_poly(n, p.g - half, p.h - half)), eigen_energy(n, p)};
}

inline Rational virtual_energy(const SeedSpec& s, const PTParams& p) {
    const Rational half(1, 2);
    const long v = s.v;
    switch (s.kind) {
        case SeedKind::I: return -4 * (p.g + v + half) * (p.h - v - half);
        case SeedKind::II: return -4 * (p.g - v - half) * (p.h + v + half);
        case SeedKind::III: return -4 * Rational(v + 1) * (p.g + p.h - 1 - v);
    }
    return {};
}

/// Polynomial-type virtual state solutions of types I, II, III.
inline SpectralState virtual_state(const SeedSpec& s, const PTParams& p) {
    const Rational half(1, 2);
    Rational mu, nu, a, b;
    switch (s.kind) {
        case SeedKind::I:
            mu = p.g / 2, nu = (1 - p.h) / 2, a = p.g - half, b = half - p.h;
            break;
        case SeedKind::II:
            mu = (1 - p.g) / 2, nu = p.h / 2, a = half - p.g, b = p.h - half;
            break;
        case SeedKind::III:
            mu = (1 - p.g) / 2, nu = (1 - p.h) / 2, a = half - p.g, b = half - p.h;
            break;
    }
    return {QuasiRational(Rational(1), mu, nu, jacobi_poly(s.v, a, b)), virtual_energy(s, p)};
}

/// True iff the seed polynomial keeps its full degree v.
inline bool degree_condition(const SeedSpec& s, const PTParams& p) {
    for (long k = s.v + 1; k <= 2L * s.v; ++k) {
        Rational t;
        switch (s.kind) {
            case SeedKind::I: t = p.g - p.h + k; break;
            case SeedKind::II: t = p.g - p.h - k; break;
            case SeedKind::III: t = p.g + p.h - 1 - k; break;
        }
        if (sgn(t) == 0) return false;
    }
    return true;
}

/// h_n = Gamma(n+g+1/2) Gamma(n+h+1/2) / (2 n! (2n+g+h) Gamma(n+g+h)).
inline double norm_undeformed(long n, const PTParams& p) {
    const double g = p.g.get_d(), h = p.h.get_d();
    const double a1 = n + g + 0.5, a2 = n + h + 0.5, a3 = n + g + h, lin = 2.0 * n + g + h;
    if (a1 <= 0 || a2 <= 0 || a3 <= 0 || lin <= 0) throw DomainError("norm needs positive Gamma arguments");
    return std::exp(std::lgamma(a1) + std::lgamma(a2) - std::lgamma(static_cast<double>(n) + 1.0) - std::lgamma(a3)) /
           (2.0 * lin);
}

/// 2g(g-1)/(1-eta) + 2h(h-1)/(1+eta) - (g+h)^2.
inline RatFunc pt_potential(const Rational& g, const Rational& h, const Rational& shift) {
    return RatFunc(UniPoly(2 * g * (g - 1)), linear(1, -1)) + RatFunc(UniPoly(2 * h * (h - 1)), linear(1, 1)) -
           RatFunc(shift);
}

inline RatFunc pt_potential(const PTParams& p) { return pt_potential(p.g, p.h, (p.g + p.h) * (p.g + p.h)); }

/// (H - E) f divided by (1-eta)^mu (1+eta)^nu, with
/// H = -4(1-eta^2) d^2/d eta^2 + 4 eta d/d eta + U. Zero iff f solves.
inline RatFunc schrodinger_residual(const QuasiRational& f, const RatFunc& potential, const Rational& energy) {
    const RatFunc y = RatFunc(f.num() * f.scale(), f.den());
    const RatFunc a = RatFunc(UniPoly(Rational(-f.mu())), linear(1, -1)) + RatFunc(UniPoly(f.nu()), linear(1, 1));
    const RatFunc b = a.derivative() + a * a;
    const RatFunc y1 = y.derivative(), y2 = y1.derivative();
    const RatFunc one_minus_sq(from_coeffs({1, 0, -1}));
    const RatFunc eta_rf(eta());
    return RatFunc(Rational(-4)) * one_minus_sq * (y2 + RatFunc(Rational(2)) * a * y1 + b * y) +
           RatFunc(Rational(4)) * eta_rf * (y1 + a * y) + (potential - RatFunc(energy)) * y;
}

}  // namespace miop
