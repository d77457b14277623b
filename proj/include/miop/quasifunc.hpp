#pragma once

#include <cmath>
#include <span>
#include <vector>

#include <json.hpp>

#include "exactmath.hpp"

namespace miop {

/// scale * (1-eta)^mu * (1+eta)^nu * num(eta) / den(eta).
///
/// Canonical form: num and den coprime, den monic with den(+-1) != 0, and
/// num(+-1) != 0 unless num is zero. All (1 -+ eta) content lives in mu, nu.
class QuasiRational {
public:
    QuasiRational() = default;
    QuasiRational(Rational scale, Rational mu, Rational nu, UniPoly num, UniPoly den = UniPoly(Rational(1)))
        : scale_(std::move(scale)), mu_(std::move(mu)), nu_(std::move(nu)), num_(std::move(num)), den_(std::move(den)) {
        normalize();
    }

    [[nodiscard]] const Rational& scale() const { return scale_; }
    [[nodiscard]] const Rational& mu() const { return mu_; }
    [[nodiscard]] const Rational& nu() const { return nu_; }
    [[nodiscard]] const UniPoly& num() const { return num_; }
    [[nodiscard]] const UniPoly& den() const { return den_; }
    [[nodiscard]] bool is_zero() const { return num_.is_zero(); }

    [[nodiscard]] double operator()(double x) const {
        return scale_.get_d() * std::pow(1.0 - x, mu_.get_d()) * std::pow(1.0 + x, nu_.get_d()) * eval_double(num_, x) /
               eval_double(den_, x);
    }

    friend bool operator==(const QuasiRational& a, const QuasiRational& b) {
        return a.scale_ == b.scale_ && a.mu_ == b.mu_ && a.nu_ == b.nu_ && a.num_ == b.num_ && a.den_ == b.den_;
    }

private:
    Rational scale_{1}, mu_{0}, nu_{0};
    UniPoly num_, den_{Rational(1)};

    void normalize() {
        if (den_.is_zero()) throw DivisionError("quasi-rational with zero denominator");
        if (num_.is_zero() || sgn(scale_) == 0) {
            *this = QuasiRational();
            num_ = UniPoly();
            return;
        }
        // (1-eta)^k = (-1)^k (eta-1)^k
        auto [kn1, n1] = strip_root(num_, Rational(1));
        auto [kd1, d1] = strip_root(den_, Rational(1));
        auto [kn2, n2] = strip_root(n1, Rational(-1));
        auto [kd2, d2] = strip_root(d1, Rational(-1));
        if ((kn1 + kd1) % 2 != 0) scale_ = -scale_;
        mu_ += kn1 - kd1;
        nu_ += kn2 - kd2;
        num_ = std::move(n2);
        den_ = std::move(d2);
        UniPoly g = gcd(num_, den_);
        if (g.degree() > 0) {
            num_ = exact_div(num_, g);
            den_ = exact_div(den_, g);
        }
        const Rational l = den_.lc();
        if (l != 1) {
            scale_ /= l;
            den_ *= Rational(1 / l);
        }
    }
};

/// d/d eta, closed in the quasi-rational class.
inline QuasiRational differentiate_eta(const QuasiRational& f) {
    if (f.is_zero()) return f;
    const UniPoly& n = f.num();
    const UniPoly& d = f.den();
    const UniPoly one_plus = linear(1, 1), one_minus = linear(1, -1), one_minus_sq = from_coeffs({1, 0, -1});
    UniPoly num = (one_plus * Rational(-f.mu()) + one_minus * f.nu()) * n * d +
                  one_minus_sq * (n.derivative() * d - n * d.derivative());
    return {f.scale(), f.mu() - 1, f.nu() - 1, num, d * d};
}

/// scale * (1-eta)^lambda * (1+eta)^sigma * poly(eta), poly(+-1) != 0.
struct FactoredWronskian {
    Rational lambda;
    Rational sigma;
    UniPoly poly;
    Rational scale{1};

    [[nodiscard]] double operator()(double x) const {
        return scale.get_d() * std::pow(1.0 - x, lambda.get_d()) * std::pow(1.0 + x, sigma.get_d()) * eval_double(poly, x);
    }
};

inline nlohmann::json to_json(const FactoredWronskian& w) {
    return {{"lambda", to_string(w.lambda)}, {"sigma", to_string(w.sigma)}, {"scale", to_string(w.scale)},
            {"poly", poly_to_json(w.poly)}};
}

/// Fraction-free determinant (Bareiss) over Q[eta].
inline UniPoly bareiss_det(std::vector<std::vector<UniPoly>> m) {
    const std::size_t n = m.size();
    if (n == 0) return UniPoly(Rational(1));
    bool negate = false;
    UniPoly prev(Rational(1));
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (m[k][k].is_zero()) {
            std::size_t p = k + 1;
            while (p < n && m[p][k].is_zero()) ++p;
            if (p == n) return {};
            std::swap(m[p], m[k]);
            negate = !negate;
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            for (std::size_t j = k + 1; j < n; ++j) m[i][j] = exact_div(m[k][k] * m[i][j] - m[i][k] * m[k][j], prev);
            m[i][k] = UniPoly();
        }
        prev = m[k][k];
    }
    return negate ? -m[n - 1][n - 1] : m[n - 1][n - 1];
}

/// Wronskian in eta before any (1 -+ eta) content is extracted from the
/// determinant: scale * (1-eta)^mu * (1+eta)^nu * det.
struct RawWronskian {
    Rational mu, nu, scale;
    UniPoly det;
};

inline RawWronskian wronskian_eta_raw(std::span<const QuasiRational> fs) {
    if (fs.empty()) throw std::invalid_argument("Wronskian of an empty list");
    const std::size_t m = fs.size();
    const UniPoly one_plus = linear(1, 1), one_minus = linear(1, -1), one_minus_sq = from_coeffs({1, 0, -1});
    RawWronskian out{Rational(0), Rational(0), Rational(1), {}};
    std::vector<std::vector<UniPoly>> rows;
    rows.reserve(m);
    for (const auto& f : fs) {
        if (f.den().degree() > 0)
            throw std::invalid_argument("Wronskian engine expects polynomial-type quasi-rational inputs");
        std::vector<UniPoly> row;
        row.reserve(m);
        UniPoly cur = f.num();
        // f^(k) = (1-eta)^(mu-k) (1+eta)^(nu-k) N_k with
        // N_{k+1} = -(mu-k)(1+eta)N_k + (nu-k)(1-eta)N_k + (1-eta^2)N_k'
        for (std::size_t k = 0; k < m; ++k) {
            row.push_back(cur);
            if (k + 1 == m) break;
            const Rational mk = f.mu() - static_cast<long>(k), nk = f.nu() - static_cast<long>(k);
            cur = (one_plus * Rational(-mk) + one_minus * nk) * cur + one_minus_sq * cur.derivative();
        }
        rows.push_back(std::move(row));
        out.mu += f.mu();
        out.nu += f.nu();
        out.scale *= f.scale();
    }
    // column k carries (1-eta^2)^(-k) relative to column 0
    const long pairs = static_cast<long>(m * (m - 1) / 2);
    out.mu -= pairs;
    out.nu -= pairs;
    out.det = bareiss_det(std::move(rows));
    return out;
}

/// W_x[f_1..f_M] for eta = cos 2x, via W_x = (d eta/dx)^(M(M-1)/2) W_eta with
/// d eta/dx = -2 (1-eta)^(1/2) (1+eta)^(1/2).
inline FactoredWronskian wronskian_x(std::span<const QuasiRational> fs) {
    RawWronskian raw = wronskian_eta_raw(fs);
    if (raw.det.is_zero()) throw DependentSeedsError("Wronskian vanishes identically: functions are linearly dependent");
    const long m = static_cast<long>(fs.size());
    const long pairs = m * (m - 1) / 2;
    FactoredWronskian w;
    w.scale = raw.scale * pow(Rational(-2), pairs);
    w.lambda = raw.mu + frac(pairs, 2);
    w.sigma = raw.nu + frac(pairs, 2);
    auto [a, r1] = strip_root(raw.det, Rational(1));
    auto [b, r2] = strip_root(r1, Rational(-1));
    if (a % 2 != 0) w.scale = -w.scale;
    w.lambda += a;
    w.sigma += b;
    w.poly = std::move(r2);
    return w;
}

inline FactoredWronskian wronskian_x(std::initializer_list<QuasiRational> fs) {
    return wronskian_x(std::span<const QuasiRational>(fs.begin(), fs.size()));
}

}  // namespace miop
