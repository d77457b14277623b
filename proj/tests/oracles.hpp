#pragma once

// Independent reference computations used only by the tests. None of these
// call back into the algorithms they are checking.

#include <cmath>
#include <map>
#include <random>
#include <utility>
#include <vector>

#include <boost/math/quadrature/tanh_sinh.hpp>

#include "miop/exactmath.hpp"

namespace miop::test {

inline UniPoly random_poly(std::mt19937& rng, int degree, int mag) {
    std::uniform_int_distribution<int> num(-mag, mag), den(1, 4);
    std::vector<Rational> c;
    for (int k = 0; k <= degree; ++k) {
        Rational r(num(rng), den(rng));
        r.canonicalize();
        c.push_back(r);
    }
    if (degree >= 0 && sgn(c.back()) == 0) c.back() = 1;
    return UniPoly(std::move(c));
}

/// Determinant over Q by plain Gaussian elimination with pivot search.
inline Rational det_gauss(std::vector<std::vector<Rational>> m) {
    const std::size_t n = m.size();
    Rational det(1);
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t p = c;
        while (p < n && sgn(m[p][c]) == 0) ++p;
        if (p == n) return Rational(0);
        if (p != c) {
            std::swap(m[p], m[c]);
            det = -det;
        }
        det *= m[c][c];
        for (std::size_t i = c + 1; i < n; ++i) {
            if (sgn(m[i][c]) == 0) continue;
            Rational f = m[i][c] / m[c][c];
            for (std::size_t j = c; j < n; ++j) m[i][j] -= f * m[c][j];
        }
    }
    return det;
}

/// Res(a, b) as the determinant of the Sylvester matrix.
inline Rational sylvester_resultant(const UniPoly& a, const UniPoly& b) {
    const int m = a.degree(), n = b.degree();
    if (m == 0 && n == 0) return Rational(1);
    const std::size_t sz = static_cast<std::size_t>(m + n);
    std::vector<std::vector<Rational>> s(sz, std::vector<Rational>(sz, Rational(0)));
    for (int i = 0; i < n; ++i)
        for (int k = 0; k <= m; ++k) s[static_cast<std::size_t>(i)][static_cast<std::size_t>(i + k)] = a.coeff(static_cast<std::size_t>(m - k));
    for (int i = 0; i < m; ++i)
        for (int k = 0; k <= n; ++k)
            s[static_cast<std::size_t>(n + i)][static_cast<std::size_t>(i + k)] = b.coeff(static_cast<std::size_t>(n - k));
    return det_gauss(std::move(s));
}


/// a = c b for a nonzero constant c.
inline bool proportional(const UniPoly& a, const UniPoly& b) {
    if (a.is_zero() || b.is_zero()) return false;
    return a * b.lc() == b * a.lc();
}

inline Rational random_rational(std::mt19937& rng, int mag, int den_max = 8) {
    std::uniform_int_distribution<int> num(-mag, mag), den(1, den_max);
    return frac(num(rng), den(rng));
}

/// P_n^(a,b) from the three-term recurrence, exact.
inline UniPoly jacobi_recurrence(long n, const Rational& a, const Rational& b) {
    UniPoly p0(Rational(1));
    if (n == 0) return p0;
    UniPoly p1 = from_coeffs({(a - b) / 2, (a + b + 2) / 2});
    for (long k = 2; k <= n; ++k) {
        const Rational c = 2 * k + a + b;
        const Rational a1 = 2 * k * (k + a + b) * (c - 2);
        const Rational a2 = (c - 1) * (a * a - b * b);
        const Rational a3 = (c - 2) * (c - 1) * c;
        const Rational a4 = 2 * (k + a - 1) * (k + b - 1) * c;
        UniPoly p2 = (from_coeffs({a2, a3}) * p1 - p0 * a4) * Rational(1 / a1);
        p0 = std::move(p1);
        p1 = std::move(p2);
    }
    return p1;
}

/// int_{-1}^{1} (1-x)^alpha (1+x)^beta x^k dx.
inline double jacobi_moment(int k, double alpha, double beta) {
    // integrating d/dx[(1-x^2) w x^j] = 0 gives (a+b+j+2) m_(j+1) = (b-a) m_j + j m_(j-1)
    double prev = 0;
    double m = std::exp((alpha + beta + 1) * std::log(2.0) + std::lgamma(alpha + 1) + std::lgamma(beta + 1) -
                        std::lgamma(alpha + beta + 2));
    for (int j = 0; j < k; ++j) {
        const double next = ((beta - alpha) * m + j * prev) / (alpha + beta + j + 2);
        prev = m;
        m = next;
    }
    return m;
}

/// int_a^b f by double-exponential quadrature.
template <class F>
double integrate(F f, double a, double b) {
    boost::math::quadrature::tanh_sinh<double> rule;
    return rule.integrate(f, a, b);
}

// ---- x-space Wronskian --------------------------------------------------------
//
// A seed in x is sin^(2 mu) x cos^(2 nu) x N(cos 2x). Expanded as a sum of
// terms coef sin^a cos^b and differentiated term by term with
// d/dx sin^a cos^b = a sin^(a-1) cos^(b+1) - b sin^(a+1) cos^(b-1).

struct XSeed {
    Rational mu, nu;
    UniPoly num;
};

using TrigSum = std::map<std::pair<Rational, Rational>, Rational>;

inline TrigSum expand_seed(const XSeed& f) {
    // cos 2x = cos^2 - sin^2
    TrigSum out;
    for (int k = 0; k <= f.num.degree(); ++k) {
        const Rational& ck = f.num.coeff(k);
        if (sgn(ck) == 0) continue;
        Rational binom(1);
        for (int j = 0; j <= k; ++j) {
            Rational c = ck * binom * ((j % 2 == 0) ? 1 : -1);
            out[{2 * f.mu + 2 * j, 2 * f.nu + 2 * (k - j)}] += c;
            binom = binom * (k - j) / (j + 1);
        }
    }
    return out;
}

inline TrigSum dx(const TrigSum& f) {
    TrigSum out;
    for (const auto& [e, c] : f) {
        const auto& [a, b] = e;
        if (sgn(a) != 0) out[{a - 1, b + 1}] += c * a;
        if (sgn(b) != 0) out[{a + 1, b - 1}] -= c * b;
    }
    return out;
}

/// Value of f / (sin^a0 cos^b0) at cos 2x = eta, exact; every term must differ
/// from (a0, b0) by even integers.
inline Rational reduced_value(const TrigSum& f, const Rational& a0, const Rational& b0, const Rational& eta) {
    const Rational s2 = (1 - eta) / 2, c2 = (1 + eta) / 2;
    Rational v(0);
    for (const auto& [e, c] : f) {
        const Rational da = (e.first - a0) / 2, db = (e.second - b0) / 2;
        if (!is_integer(da) || !is_integer(db)) throw std::logic_error("inconsistent trig exponents");
        v += c * pow(s2, da.get_num().get_si()) * pow(c2, db.get_num().get_si());
    }
    return v;
}

/// W_x[f_1..f_M] / (sin^A cos^B) at cos 2x = eta, with A = sum 2 mu - M(M-1)/2
/// and B = sum 2 nu - M(M-1)/2.
inline Rational x_wronskian_reduced(const std::vector<XSeed>& fs, const Rational& eta) {
    const std::size_t m = fs.size();
    std::vector<std::vector<Rational>> mat(m, std::vector<Rational>(m));
    for (std::size_t j = 0; j < m; ++j) {
        TrigSum d = expand_seed(fs[j]);
        for (std::size_t k = 0; k < m; ++k) {
            const long kk = static_cast<long>(k);
            mat[k][j] = reduced_value(d, 2 * fs[j].mu - kk, 2 * fs[j].nu - kk, eta);
            d = dx(d);
        }
    }
    return det_gauss(std::move(mat));
}

/// Engine value (1-eta)^lambda (1+eta)^sigma poly(eta) divided by the oracle's
/// ((1-eta)/2)^(A/2) ((1+eta)/2)^(B/2) det, up to a power of 2 and the scale.
/// Constant in eta iff the two Wronskians agree up to a constant.
inline Rational engine_over_oracle(const std::vector<XSeed>& fs, const Rational& lambda, const Rational& sigma, const UniPoly& poly,
                                   const Rational& eta) {
    const long m = static_cast<long>(fs.size());
    Rational a(0), b(0);
    for (const auto& f : fs) {
        a += f.mu;
        b += f.nu;
    }
    a -= frac(m * (m - 1), 4);
    b -= frac(m * (m - 1), 4);
    const Rational da = lambda - a, db = sigma - b;
    if (!is_integer(da) || !is_integer(db)) throw std::logic_error("engine exponents are off by a non-integer");
    const Rational oracle = x_wronskian_reduced(fs, eta);
    if (sgn(oracle) == 0) throw std::logic_error("oracle Wronskian vanishes at the sample point");
    return pow(Rational(1 - eta), da.get_num().get_si()) * pow(Rational(1 + eta), db.get_num().get_si()) * poly(eta) / oracle;
}

/// (-d^2/dx^2 + g(g-1)/sin^2 + h(h-1)/cos^2 - (g+h)^2 - E) f, divided by
/// sin^(2mu-2) cos^(2nu-2), at cos 2x = eta.
inline Rational schrodinger_x_residual(const XSeed& f, const Rational& g, const Rational& h, const Rational& energy,
                                       const Rational& eta) {
    const TrigSum f0 = expand_seed(f);
    TrigSum r;
    for (const auto& [e, c] : dx(dx(f0))) r[e] -= c;
    for (const auto& [e, c] : f0) {
        r[{e.first - 2, e.second}] += g * (g - 1) * c;
        r[{e.first, e.second - 2}] += h * (h - 1) * c;
        r[e] -= ((g + h) * (g + h) + energy) * c;
    }
    return reduced_value(r, 2 * f.mu - 2, 2 * f.nu - 2, eta);
}

}  // namespace miop::test
