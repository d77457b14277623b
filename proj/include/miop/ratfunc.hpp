#pragma once

#include <utility>

#include "polyalg.hpp"

namespace miop {

/// num/den over Q with gcd(num, den) = 1 and den monic.
class RatFunc {
public:
    RatFunc() : den_(Rational(1)) {}
    RatFunc(UniPoly num) : num_(std::move(num)), den_(Rational(1)) {}  // NOLINT
    RatFunc(const Rational& c) : num_(c), den_(Rational(1)) {}          // NOLINT
    RatFunc(UniPoly num, UniPoly den) : num_(std::move(num)), den_(std::move(den)) { normalize(); }

    [[nodiscard]] const UniPoly& num() const { return num_; }
    [[nodiscard]] const UniPoly& den() const { return den_; }
    [[nodiscard]] bool is_zero() const { return num_.is_zero(); }
    [[nodiscard]] bool is_polynomial() const { return den_.degree() == 0; }

    friend RatFunc operator+(const RatFunc& a, const RatFunc& b) {
        if (a.den_ == b.den_) return {a.num_ + b.num_, a.den_};
        return {a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_};
    }
    friend RatFunc operator-(const RatFunc& a, const RatFunc& b) {
        if (a.den_ == b.den_) return {a.num_ - b.num_, a.den_};
        return {a.num_ * b.den_ - b.num_ * a.den_, a.den_ * b.den_};
    }
    friend RatFunc operator-(const RatFunc& a) { return {-a.num_, a.den_}; }
    friend RatFunc operator*(const RatFunc& a, const RatFunc& b) { return {a.num_ * b.num_, a.den_ * b.den_}; }
    friend RatFunc operator/(const RatFunc& a, const RatFunc& b) {
        if (b.is_zero()) throw DivisionError("division by the zero rational function");
        return {a.num_ * b.den_, a.den_ * b.num_};
    }
    friend bool operator==(const RatFunc& a, const RatFunc& b) { return a.num_ == b.num_ && a.den_ == b.den_; }

    [[nodiscard]] RatFunc derivative() const {
        return {num_.derivative() * den_ - num_ * den_.derivative(), den_ * den_};
    }

    /// Exact value; PoleError at a zero of the denominator.
    [[nodiscard]] Rational operator()(const Rational& x) const {
        Rational d = den_(x);
        if (sgn(d) == 0) throw PoleError("rational function has a pole at " + to_string(x));
        return num_(x) / d;
    }

private:
    UniPoly num_, den_;

    void normalize() {
        if (den_.is_zero()) throw DivisionError("zero denominator");
        if (num_.is_zero()) {
            den_ = UniPoly(Rational(1));
            return;
        }
        UniPoly g = gcd(num_, den_);
        if (g.degree() > 0) {
            num_ = exact_div(num_, g);
            den_ = exact_div(den_, g);
        }
        Rational l = den_.lc();
        if (l != 1) {
            Rational inv = 1 / l;
            num_ *= inv;
            den_ *= inv;
        }
    }
};

}  // namespace miop
