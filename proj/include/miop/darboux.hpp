#pragma once

#include <algorithm>
#include <vector>

#include <json.hpp>

#include "spectral.hpp"

namespace miop {

struct SeedCounts {
    int M = 0;  // type I
    int N = 0;  // type II
    int L = 0;  // type III
};

inline SeedCounts count_seeds(const std::vector<SeedSpec>& seeds) {
    SeedCounts c;
    for (const auto& s : seeds) {
        if (s.kind == SeedKind::I) ++c.M;
        if (s.kind == SeedKind::II) ++c.N;
        if (s.kind == SeedKind::III) ++c.L;
    }
    return c;
}

/// Data of the M-step deformation: W[seeds] = (1-eta)^lambda_p (1+eta)^sigma_p D(eta).
struct DeformedSystem {
    PTParams params;
    std::vector<SeedSpec> seeds;
    SeedCounts counts;
    int J = 0, K = 0;
    Rational lambda_p, sigma_p;
    UniPoly den{Rational(1)};
    Rational den_scale{1};
    Rational gbar, hbar;
    int ell = 0;
};

/// Psi_n numerator: W[seeds, phi_n] = (1-eta)^lambda_n (1+eta)^sigma_n Q_n(eta).
struct DeformedMode {
    long n = 0;
    Rational lambda_n, sigma_n;
    UniPoly numQ;
    Rational scale{1};
    Rational energy;
};

inline Rational exponent_lambda_p(int J, const Rational& g) { return Rational(J) * (2 * g + J - 1) / 4; }
inline Rational exponent_lambda(int J, const Rational& g) { return Rational(J + 1) * (2 * g + J) / 4; }

/// Sum v - M(M-1)/2 - N(N-1)/2 - L(L-1)/2 + MN, the generic degree of D.
inline int generic_degree(const std::vector<SeedSpec>& seeds) {
    SeedCounts c = count_seeds(seeds);
    int vs = 0;
    for (const auto& s : seeds) vs += s.v;
    return vs - c.M * (c.M - 1) / 2 - c.N * (c.N - 1) / 2 - c.L * (c.L - 1) / 2 + c.M * c.N;
}

namespace detail {

// The engine strips every (1 -+ eta) factor it sees. At special parameter
// points the polynomial part can itself vanish at +-1; put that content back
// so that the exponents agree with the closed forms.
inline void match_exponents(FactoredWronskian& w, const Rational& lam, const Rational& sig) {
    Rational dl = w.lambda - lam, ds = w.sigma - sig;
    if (sgn(dl) < 0 || sgn(ds) < 0 || !is_integer(dl) || !is_integer(ds))
        throw ExponentMismatchError("Wronskian exponents (" + to_string(w.lambda) + ", " + to_string(w.sigma) +
                                    ") disagree with (" + to_string(lam) + ", " + to_string(sig) + ")");
    long a = dl.get_num().get_si(), b = ds.get_num().get_si();
    w.poly = w.poly * pow(linear(1, -1), static_cast<unsigned>(a)) * pow(linear(1, 1), static_cast<unsigned>(b));
    w.lambda = lam;
    w.sigma = sig;
}

inline std::vector<QuasiRational> seed_functions(const std::vector<SeedSpec>& seeds, const PTParams& p) {
    std::vector<QuasiRational> fs;
    fs.reserve(seeds.size());
    for (const auto& s : seeds) fs.push_back(virtual_state(s, p).f);
    return fs;
}

}  // namespace detail

inline DeformedSystem build_system(const std::vector<SeedSpec>& seeds, const PTParams& p) {
    for (std::size_t i = 0; i < seeds.size(); ++i)
        for (std::size_t j = i + 1; j < seeds.size(); ++j)
            if (seeds[i] == seeds[j]) throw std::invalid_argument("seed " + to_string(seeds[i]) + " repeated");
    DeformedSystem sys;
    sys.params = p;
    sys.seeds = seeds;
    sys.counts = count_seeds(seeds);
    const auto [M, N, L] = sys.counts;
    sys.J = M - N - L;
    sys.K = -M + N - L;
    sys.gbar = p.g + sys.J;
    sys.hbar = p.h + sys.K;
    sys.lambda_p = exponent_lambda_p(sys.J, p.g);
    sys.sigma_p = exponent_lambda_p(sys.K, p.h);
    sys.ell = generic_degree(seeds);
    if (seeds.empty()) return sys;
    auto fs = detail::seed_functions(seeds, p);
    FactoredWronskian w = wronskian_x(fs);
    detail::match_exponents(w, sys.lambda_p, sys.sigma_p);
    sys.den = std::move(w.poly);
    sys.den_scale = w.scale;
    return sys;
}

inline DeformedMode numerator_mode(const DeformedSystem& sys, long n) {
    if (n < 0) throw std::invalid_argument("numerator_mode needs n >= 0; additional modes come from polynomial_kernel");
    auto fs = detail::seed_functions(sys.seeds, sys.params);
    fs.push_back(eigenfunction(n, sys.params).f);
    FactoredWronskian w = wronskian_x(fs);
    DeformedMode mode;
    mode.n = n;
    mode.lambda_n = exponent_lambda(sys.J, sys.params.g);
    mode.sigma_n = exponent_lambda(sys.K, sys.params.h);
    detail::match_exponents(w, mode.lambda_n, mode.sigma_n);
    mode.numQ = std::move(w.poly);
    mode.scale = w.scale;
    mode.energy = eigen_energy(n, sys.params);
    return mode;
}

/// U = 2gb(gb-1)/(1-eta) + 2hb(hb-1)/(1+eta) - (gb+hb+2L)^2
///     + 8[(1-eta^2)(D'^2 - D D'')/D^2 + eta D'/D].
struct DeformedPotential {
    Rational gbar, hbar;
    int L = 0;
    UniPoly den;

    [[nodiscard]] RatFunc as_ratfunc() const {
        const Rational shift = gbar + hbar + 2 * L;
        const UniPoly d1 = den.derivative(), d2 = d1.derivative();
        RatFunc bracket = RatFunc(from_coeffs({1, 0, -1}) * (d1 * d1 - den * d2), den * den) + RatFunc(eta() * d1, den);
        return pt_potential(gbar, hbar, shift * shift) + RatFunc(Rational(8)) * bracket;
    }

    /// Exact value; PoleError at eta = +-1 and at zeros of D.
    [[nodiscard]] Rational operator()(const Rational& x) const {
        if (x == 1 || x == -1) throw PoleError("potential is singular at eta = " + to_string(x));
        if (is_zero_value(den(x))) throw PoleError("eta = " + to_string(x) + " is a zero of D");
        return as_ratfunc()(x);
    }
};

inline DeformedPotential deformed_potential(const DeformedSystem& sys) {
    return {sys.gbar, sys.hbar, sys.counts.L, sys.den};
}

/// psi_n = (1-eta)^(gbar/2) (1+eta)^(hbar/2) Q_n / D.
inline QuasiRational deformed_eigenfunction(const DeformedSystem& sys, const DeformedMode& mode) {
    return {mode.scale / sys.den_scale, mode.lambda_n - sys.lambda_p, mode.sigma_n - sys.sigma_p, mode.numQ, sys.den};
}

/// Number of distinct real zeros of p in the open interval (a, b).
inline int count_real_roots_open(const UniPoly& p, const Rational& a, const Rational& b) {
    if (p.degree() < 1) return 0;
    UniPoly q = squarefree_part(p);
    auto seq = detail::sturm_sequence(q);
    int n = detail::sign_changes(seq, a) - detail::sign_changes(seq, b);
    if (is_zero_value(q(b))) --n;
    return n;
}

/// prod_j (E_n - E~_j) * h_n, the norm of psi_n in the deformed system.
inline double deformed_norm(const DeformedSystem& sys, long n) {
    if (count_real_roots_open(sys.den, Rational(-1), Rational(1)) > 0)
        throw DomainError("D has a zero inside (-1, 1); the deformed system is singular");
    const Rational en = eigen_energy(n, sys.params);
    double prod = 1.0;
    for (const auto& s : sys.seeds) {
        Rational diff = en - virtual_energy(s, sys.params);
        if (sgn(diff) == 0) throw OnSpectrumError("E_" + std::to_string(n) + " coincides with the energy of " + to_string(s));
        prod *= diff.get_d();
    }
    return prod * norm_undeformed(n, sys.params);
}

inline nlohmann::json seeds_to_json(const std::vector<SeedSpec>& seeds) {
    nlohmann::json a = nlohmann::json::array();
    for (const auto& s : seeds) a.push_back(to_string(s));
    return a;
}

inline nlohmann::json to_json(const DeformedSystem& sys) {
    return {{"seeds", seeds_to_json(sys.seeds)},
            {"g", to_string(sys.params.g)},
            {"h", to_string(sys.params.h)},
            {"counts", {{"M", sys.counts.M}, {"N", sys.counts.N}, {"L", sys.counts.L}}},
            {"J", sys.J},
            {"K", sys.K},
            {"lambda_p", to_string(sys.lambda_p)},
            {"sigma_p", to_string(sys.sigma_p)},
            {"gbar", to_string(sys.gbar)},
            {"hbar", to_string(sys.hbar)},
            {"ell", sys.ell},
            {"D", poly_to_json(sys.den)},
            {"D_scale", to_string(sys.den_scale)}};
}

}  // namespace miop
