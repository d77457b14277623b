#pragma once

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <functional>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "closed_forms.hpp"

namespace miop {

struct QuadratureRule {
    std::vector<double> nodes;    // ascending, in (-1, 1)
    std::vector<double> weights;  // positive
    double alpha = 0, beta = 0;   // weight (1-x)^alpha (1+x)^beta
};

namespace detail {

// P_n^(a,b)(x) and its derivative by the three-term recurrence.
inline std::pair<double, double> jacobi_eval(int n, double a, double b, double x) {
    if (n == 0) return {1.0, 0.0};
    double p0 = 1.0;
    double p1 = 0.5 * (a - b + (a + b + 2) * x);
    for (int k = 2; k <= n; ++k) {
        const double c = 2.0 * k + a + b;
        const double a1 = 2.0 * k * (k + a + b) * (c - 2);
        const double a2 = (c - 1) * (a * a - b * b);
        const double a3 = (c - 2) * (c - 1) * c;
        const double a4 = 2.0 * (k + a - 1) * (k + b - 1) * c;
        const double p2 = ((a2 + a3 * x) * p1 - a4 * p0) / a1;
        p0 = p1;
        p1 = p2;
    }
    // (1-x^2) P_n' = n (a - b - (2n+a+b) x) P_n / (2n+a+b) + 2 (n+a)(n+b) P_(n-1) / (2n+a+b)
    const double c = 2.0 * n + a + b;
    const double d = (n * (a - b - c * x) * p1 + 2.0 * (n + a) * (n + b) * p0) / (c * (1 - x * x));
    return {p1, d};
}

}  // namespace detail

/// Gauss-Jacobi rule: nodes by Newton with asymptotic cosine guesses and
/// deflation against the roots already found.
inline QuadratureRule gauss_jacobi(int n, double alpha, double beta) {
    if (n < 1) throw std::invalid_argument("quadrature needs at least one node");
    if (alpha <= -1 || beta <= -1) throw DomainError("Jacobi weight needs alpha, beta > -1");
    QuadratureRule rule;
    rule.alpha = alpha;
    rule.beta = beta;
    rule.nodes.reserve(static_cast<std::size_t>(n));
    std::vector<double> deriv;
    for (int i = 1; i <= n; ++i) {
        double x = std::cos(std::numbers::pi * (0.5 * alpha + i - 0.25) / (0.5 * (1 + alpha + beta) + n));
        if (!rule.nodes.empty()) x = std::min(x, rule.nodes.back() - 1e-15);
        double dp = 0;
        bool done = false;
        for (int it = 0; it < 100; ++it) {
            auto [p, d] = detail::jacobi_eval(n, alpha, beta, x);
            double s = 0;
            for (double r : rule.nodes) s += 1.0 / (x - r);
            const double step = p / (d - p * s);
            x -= step;
            dp = d;
            if (std::abs(step) <= 1e-15 * std::max(1.0, std::abs(x))) {
                dp = detail::jacobi_eval(n, alpha, beta, x).second;
                done = true;
                break;
            }
        }
        if (!done) throw NonconvergenceError("Newton iteration for Gauss-Jacobi node " + std::to_string(i) + " did not converge");
        rule.nodes.push_back(x);
        deriv.push_back(dp);
    }
    const double logc = std::lgamma(n + alpha + 1) + std::lgamma(n + beta + 1) - std::lgamma(n + alpha + beta + 1) -
                        std::lgamma(n + 1.0) + (alpha + beta + 1) * std::log(2.0);
    for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
        const double x = rule.nodes[i];
        rule.weights.push_back(std::exp(logc) / ((1 - x * x) * deriv[i] * deriv[i]));
    }
    std::reverse(rule.nodes.begin(), rule.nodes.end());
    std::reverse(rule.weights.begin(), rule.weights.end());
    return rule;
}

inline int default_nodes() {
    if (const char* env = std::getenv("MIOP_NODES")) {
        int n = std::atoi(env);
        if (n >= 1) return n;
    }
    return 128;
}

// ---- orthonormality ---------------------------------------------------------------

struct OrthReport {
    std::string caseId;
    Rational h;
    std::vector<long> ns;
    int nodes = 0;
    std::vector<std::vector<double>> gram;
    double max_offdiag_rel = 0;
    std::vector<long> diag_ns;          // n >= 0, compared with the norm formula
    std::vector<double> diag_expected;  // before the fitted constant
    std::vector<double> diag_rel_err;
    double constant_fit = 0;
    double doubling_change = 0;  // max relative change N -> 2N
};

/// Polynomial of mode n in the family: P_n for n >= 0, the unique polynomial
/// solution of the P equation at negative n.
inline UniPoly family_polynomial(const ConfluentFamily& fam, long n) {
    if (n >= 0) return family_mode(fam, n);
    auto k = polynomial_kernel(ode_for_P(fam, n), fam.base.ell + 8);
    if (k.size() != 1)
        throw MismatchError("expected one polynomial mode at n = " + std::to_string(n) + ", found " + std::to_string(k.size()));
    return k.front();
}

namespace detail {

inline std::vector<std::vector<double>> gram_matrix(const std::vector<UniPoly>& ps, const UniPoly& w, const QuadratureRule& rule) {
    const std::size_t m = ps.size();
    std::vector<std::vector<double>> vals(m);
    std::vector<double> inv_w2;
    for (double x : rule.nodes) {
        const double wv = eval_exact_at(w, x);
        inv_w2.push_back(1.0 / (wv * wv));
    }
    for (std::size_t i = 0; i < m; ++i)
        for (double x : rule.nodes) vals[i].push_back(eval_exact_at(ps[i], x));
    std::vector<std::vector<double>> g(m, std::vector<double>(m, 0.0));
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = i; j < m; ++j) {
            double s = 0;
            for (std::size_t k = 0; k < rule.nodes.size(); ++k) s += rule.weights[k] * inv_w2[k] * vals[i][k] * vals[j][k];
            g[i][j] = g[j][i] = s;
        }
    return g;
}

inline double max_rel_change(const std::vector<std::vector<double>>& a, const std::vector<std::vector<double>>& b) {
    double scale = 0, diff = 0;
    for (std::size_t i = 0; i < a.size(); ++i) scale = std::max(scale, std::abs(b[i][i]));
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < a.size(); ++j) {
            // off-diagonals are measured against the diagonal scale
            const double ref = (i == j) ? std::abs(b[i][i]) : std::sqrt(std::abs(b[i][i] * b[j][j]));
            diff = std::max(diff, std::abs(a[i][j] - b[i][j]) / (ref > 0 ? ref : scale));
        }
    return diff;
}

}  // namespace detail

/// Gram matrix of the family modes at a fixed node count.
inline std::vector<std::vector<double>> gram_matrix(const ConfluentFamily& fam, const std::vector<long>& ns, int nodes) {
    std::vector<UniPoly> ps;
    for (long n : ns) ps.push_back(family_polynomial(fam, n));
    return detail::gram_matrix(ps, fam.w, gauss_jacobi(nodes, fam.base.gbar.get_d() - 0.5, fam.base.hbar.get_d() - 0.5));
}

/// Expected diagonal entries h_n for n >= 0, up to one family-wide constant.
using NormModel = std::function<double(long)>;

/// prod_j (E_n - E~_j) h_n(g, h), valid for every family.
inline NormModel product_norm_model(const ConfluentFamily& fam) {
    return [sys = fam.base](long n) { return deformed_norm(sys, n); };
}

/// Gram matrix of {P_n} under (1-eta)^(gbar-1/2) (1+eta)^(hbar-1/2) / w^2.
/// The node count doubles from `nodes` until entries move by less than 1e-10.
inline OrthReport orthonormality_suite(const ConfluentFamily& fam, const std::vector<long>& ns, const NormModel& model,
                                       int nodes = default_nodes()) {
    if (fam.caseId) {
        const RangeReport rr = range_check(find_case(*fam.caseId), fam.base.params.h);
        if (!rr.admissible) throw RangeError(*fam.caseId + " at h = " + to_string(fam.base.params.h) + ": " + rr.reasons.front());
    }
    OrthReport rep;
    rep.caseId = fam.caseId.value_or("");
    rep.h = fam.base.params.h;
    rep.ns = ns;
    std::vector<UniPoly> ps;
    for (long n : ns) ps.push_back(family_polynomial(fam, n));
    const double a = fam.base.gbar.get_d() - 0.5, b = fam.base.hbar.get_d() - 0.5;
    auto g = detail::gram_matrix(ps, fam.w, gauss_jacobi(nodes, a, b));
    int n_used = nodes;
    while (true) {
        auto g2 = detail::gram_matrix(ps, fam.w, gauss_jacobi(2 * n_used, a, b));
        rep.doubling_change = detail::max_rel_change(g, g2);
        if (rep.doubling_change < 1e-10 || n_used >= 2048) break;
        g = std::move(g2);
        n_used *= 2;
    }
    rep.nodes = n_used;
    rep.gram = g;
    for (std::size_t i = 0; i < ns.size(); ++i)
        for (std::size_t j = 0; j < ns.size(); ++j)
            if (i != j) rep.max_offdiag_rel = std::max(rep.max_offdiag_rel, std::abs(g[i][j]) / std::sqrt(g[i][i] * g[j][j]));
    for (std::size_t i = 0; i < ns.size(); ++i) {
        if (ns[i] < 0) continue;
        rep.diag_ns.push_back(ns[i]);
        rep.diag_expected.push_back(model(ns[i]));
        if (rep.diag_ns.size() == 1) rep.constant_fit = g[i][i] / rep.diag_expected.back();
        rep.diag_rel_err.push_back(std::abs(g[i][i] / (rep.constant_fit * rep.diag_expected.back()) - 1));
    }
    return rep;
}

inline nlohmann::json to_json(const OrthReport& r) {
    return {{"caseId", r.caseId},
            {"h", to_string(r.h)},
            {"n_range", r.ns},
            {"nodes", r.nodes},
            {"max_offdiag_rel", r.max_offdiag_rel},
            {"diag_n", r.diag_ns},
            {"diag_rel_err", r.diag_rel_err},
            {"constant_fit", r.constant_fit},
            {"doubling_change", r.doubling_change}};
}

/// case,h,n,m,integral,expected,rel_err
inline std::string to_csv(const OrthReport& r, bool header = true) {
    std::ostringstream os;
    os.precision(17);
    if (header) os << "case,h,n,m,integral,expected,rel_err\n";
    for (std::size_t i = 0; i < r.ns.size(); ++i)
        for (std::size_t j = i; j < r.ns.size(); ++j) {
            double expected = 0, rel = std::abs(r.gram[i][j]) / std::sqrt(r.gram[i][i] * r.gram[j][j]);
            if (i == j) {
                auto it = std::find(r.diag_ns.begin(), r.diag_ns.end(), r.ns[i]);
                if (it == r.diag_ns.end()) {
                    expected = std::nan("");
                    rel = std::nan("");
                } else {
                    const auto k = static_cast<std::size_t>(it - r.diag_ns.begin());
                    expected = r.constant_fit * r.diag_expected[k];
                    rel = r.diag_rel_err[k];
                }
            }
            os << r.caseId << ',' << to_string(r.h) << ',' << r.ns[i] << ',' << r.ns[j] << ',' << r.gram[i][j] << ','
               << expected << ',' << rel << '\n';
        }
    return os.str();
}

// ---- closed-form cross-check ------------------------------------------------------

struct CrossCheck {
    bool match = false;
    Rational constant;
};

/// Wronskian-built P_n against the closed form for n = 0..n_max, with one
/// constant fixed at n = 0.
inline CrossCheck closed_form_crosscheck(const std::string& id, const Rational& h, long n_max) {
    const ConfluentFamily fam = make_family(find_case(id), h);
    CrossCheck out;
    for (long n = 0; n <= n_max; ++n) {
        const UniPoly built = family_mode(fam, n), closed = closed_form_P(id, h, n);
        if (n == 0) {
            auto c = proportionality(built, closed);
            if (!c) throw MismatchError(id + " n=0 is not proportional to the closed form");
            out.constant = *c;
        }
        const UniPoly diff = built - closed * out.constant;
        if (!diff.is_zero()) throw MismatchError(id + " n=" + std::to_string(n) + ": residual " + to_string(diff));
    }
    out.match = true;
    return out;
}

// ---- Laguerre limit -------------------------------------------------------------------

struct LimitCheck {
    std::string caseId;
    double h = 0;
    long n = 0;
    double rel_err = 0;   // against the reference (literal for Group IV)
    double constant = 1;  // least-squares ratio scaled / reference
    double shape_err = 0; // after dividing out `constant`
};

inline const std::vector<Rational>& limit_sample_points() {
    static const std::vector<Rational> xs{Rational(1, 2), Rational(1), Rational(2), Rational(3)};
    return xs;
}

/// h^(-m) P(1 - 2x/h) as a polynomial in x.
inline UniPoly scaled_limit(const UniPoly& p, const Rational& h, int m) {
    return compose_linear(p, Rational(-2) / h, Rational(1)) * Rational(1 / pow(h, m));
}

/// h = +h_mag for Groups I, II and -h_mag for III, IV; m = 2, or 3 for Group IV.
inline std::pair<Rational, int> limit_scaling(Group g, const Rational& h_mag) {
    const bool lower = (g == Group::III || g == Group::IV);
    return {lower ? Rational(-h_mag) : h_mag, g == Group::IV ? 3 : 2};
}

/// Reference limit polynomial: the printed one for Group IV, otherwise the
/// polynomial solution of the limit equation at the limiting gbar.
inline UniPoly limit_reference(const CatalogCase& cc, long n, int degree) {
    if (cc.group == Group::IV) return laguerre_new(n);
    auto k = polynomial_kernel(limit_ode(cc.group, gbar_limit(cc), n, cc.gamma), degree);
    if (k.size() != 1) throw MismatchError("limit equation has " + std::to_string(k.size()) + " polynomial solutions");
    return k.front();
}

namespace detail {

inline LimitCheck compare_limit(const UniPoly& scaled, const UniPoly& ref, bool up_to_constant) {
    LimitCheck out;
    double num = 0, den = 0;
    std::vector<double> s, r;
    for (const auto& x : limit_sample_points()) {
        s.push_back(scaled(x).get_d());
        r.push_back(ref(x).get_d());
        num += s.back() * r.back();
        den += r.back() * r.back();
    }
    out.constant = num / den;
    for (std::size_t i = 0; i < s.size(); ++i) {
        out.rel_err = std::max(out.rel_err, std::abs(s[i] - r[i]) / std::abs(r[i]));
        out.shape_err = std::max(out.shape_err, std::abs(s[i] - out.constant * r[i]) / std::abs(out.constant * r[i]));
    }
    if (up_to_constant) out.rel_err = out.shape_err;
    return out;
}

}  // namespace detail

/// Scaled closed-form P_n of a family at |h| = h_mag against its limit.
/// Groups I-III compare up to a constant; Group IV compares with the printed L^New.
inline LimitCheck laguerre_limit_check(const std::string& id, const Rational& h_mag, long n) {
    const CatalogCase& cc = find_case(id);
    const auto [h, m] = limit_scaling(cc.group, h_mag);
    const UniPoly scaled = scaled_limit(closed_form_P(id, h, n), h, m);
    LimitCheck out = detail::compare_limit(scaled, limit_reference(cc, n, scaled.degree()), cc.group != Group::IV);
    out.caseId = id;
    out.h = h.get_d();
    out.n = n;
    return out;
}

/// Additional modes of IVa in the limit: P_-3 -> -(4x+3), P_-2 -> 4(16x^2+24x+45).
inline LimitCheck laguerre_extra_check(const Rational& h_mag, long n) {
    const Rational h = -h_mag;
    const int m = (n == -3) ? 0 : 2;
    const UniPoly scaled = scaled_limit(closed_form_extra("IVa", h, n), h, m);
    const UniPoly ref = (n == -3) ? -linear(3, 4) : from_coeffs({45, 24, 16}) * Rational(4);
    LimitCheck out = detail::compare_limit(scaled, ref, false);
    out.caseId = "IVa";
    out.h = h.get_d();
    out.n = n;
    return out;
}

/// Spread of log(psi / (x^(gbar/2) e^(-x/2) L(x) / (4x -+ 3)^2)) over the sample
/// points; zero when the claimed limiting prefactor is exact.
inline double limit_prefactor_spread(const std::string& id, const Rational& h_mag, long n) {
    const CatalogCase& cc = find_case(id);
    const auto [h, m] = limit_scaling(cc.group, h_mag);
    const ConfluentFamily fam = make_family(cc, h);
    const UniPoly p = closed_form_P(id, h, n);
    const UniPoly ref = limit_reference(cc, n, p.degree());
    const double gb = fam.base.gbar.get_d(), hb = fam.base.hbar.get_d(), gl = gbar_limit(cc).get_d();
    const double sign = (cc.group == Group::I || cc.group == Group::II) ? 1.0 : -1.0;
    double lo = 1e300, hi = -1e300;
    for (const auto& xq : limit_sample_points()) {
        const Rational e = 1 - 2 * xq / h;
        const double x = xq.get_d();
        const double one_minus = Rational(1 - e).get_d(), one_plus = Rational(1 + e).get_d();
        const double log_psi = 0.5 * gb * std::log(std::abs(one_minus)) + 0.5 * hb * std::log(one_plus) +
                               std::log(std::abs(p(e).get_d())) - std::log(std::abs(fam.w(e).get_d()));
        const double d = 4 * x + sign * 3;
        const double log_claim = 0.5 * gl * std::log(x) - 0.5 * x + std::log(std::abs(ref(xq).get_d())) - std::log(d * d);
        lo = std::min(lo, log_psi - log_claim);
        hi = std::max(hi, log_psi - log_claim);
    }
    return hi - lo;
}

inline nlohmann::json to_json(const LimitCheck& c) {
    return {{"caseId", c.caseId}, {"h", c.h},         {"n", c.n},
            {"rel_err", c.rel_err}, {"constant", c.constant}, {"shape_err", c.shape_err}};
}

}  // namespace miop
