#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include <boost/math/special_functions/jacobi.hpp>

#include "miop/spectral.hpp"
#include "oracles.hpp"

using namespace miop;
using namespace miop::test;

namespace {

XSeed as_xseed(const QuasiRational& f) { return {f.mu(), f.nu(), f.num()}; }

// Jacobi parameters of the seed polynomial, before any (1 -+ eta) content is factored out.
UniPoly seed_polynomial(const SeedSpec& s, const PTParams& p) {
    const Rational half(1, 2);
    switch (s.kind) {
        case SeedKind::I: return jacobi_poly(s.v, p.g - half, half - p.h);
        case SeedKind::II: return jacobi_poly(s.v, half - p.g, p.h - half);
        case SeedKind::III: return jacobi_poly(s.v, half - p.g, half - p.h);
    }
    return {};
}

// phi_n(x)^2 in x, for the quadrature oracle
double phi_squared(double g, double h, const UniPoly& p, double x) {
    const double v = std::pow(std::sin(x), g) * std::pow(std::cos(x), h) * eval_double(p, std::cos(2 * x));
    return v * v;
}

}  // namespace

TEST(Jacobi, LowDegrees) {
    const Rational a(3, 5), b(-7, 4);
    EXPECT_EQ(jacobi_poly(0, a, b), UniPoly(Rational(1)));
    const UniPoly one_minus_half = from_coeffs({Rational(1, 2), Rational(-1, 2)});
    EXPECT_EQ(jacobi_poly(1, a, b), UniPoly(a + 1) - one_minus_half * (a + b + 2));
    EXPECT_EQ(jacobi_poly(2, Rational(0), Rational(0)), from_coeffs({Rational(-1, 2), 0, Rational(3, 2)}));
}

TEST(Jacobi, MatchesExactRecurrence) {
    std::mt19937 rng(3);
    for (int trial = 0; trial < 40; ++trial) {
        const Rational a = random_rational(rng, 12, 5), b = random_rational(rng, 12, 5);
        for (long n = 0; n <= 6; ++n) {
            // the recurrence divides by 2k(k+a+b)(2k+a+b-2)
            bool singular = false;
            for (long k = 2; k <= n; ++k)
                if (sgn(k + a + b) == 0 || sgn(2 * k + a + b - 2) == 0) singular = true;
            if (singular) continue;
            ASSERT_EQ(jacobi_poly(n, a, b), jacobi_recurrence(n, a, b)) << n << " " << to_string(a) << " " << to_string(b);
        }
    }
}

TEST(Jacobi, MatchesBoostInFloatingPoint) {
    for (long n = 0; n <= 7; ++n)
        for (double x : {-0.9, -0.2, 0.35, 0.8}) {
            const double ours = eval_double(jacobi_poly(n, Rational(5, 2), Rational(-1, 3)), x);
            const double ref = boost::math::jacobi(static_cast<unsigned>(n), 2.5, -1.0 / 3.0, x);
            EXPECT_NEAR(ours, ref, 1e-12 * std::max(1.0, std::abs(ref)));
        }
}

TEST(Jacobi, DegreeIsFullUnlessADegreeConditionFires) {
    std::mt19937 rng(5);
    for (int trial = 0; trial < 60; ++trial) {
        const PTParams p{random_rational(rng, 6, 2), random_rational(rng, 6, 2)};
        for (SeedKind k : {SeedKind::I, SeedKind::II, SeedKind::III})
            for (int v = 1; v <= 3; ++v) {
                const SeedSpec s{k, v};
                const int deg = seed_polynomial(s, p).degree();
                EXPECT_EQ(deg == v, degree_condition(s, p)) << to_string(s) << " g=" << to_string(p.g) << " h=" << to_string(p.h);
            }
    }
}

TEST(Laguerre, LowDegrees) {
    EXPECT_EQ(laguerre_poly(0, Rational(7, 3)), UniPoly(Rational(1)));
    EXPECT_EQ(laguerre_poly(1, Rational(7, 3)), from_coeffs({Rational(10, 3), -1}));
}

TEST(Laguerre, IsTheLimitOfJacobi) {
    const Rational a(3, 4), b(1000000);
    // P_n^(a,b)(1 - 2x/b) -> L_n^(a)(x)
    const UniPoly scaled = compose_linear(jacobi_poly(3, a, b), Rational(-2) / b, Rational(1));
    const UniPoly lag = laguerre_poly(3, a);
    for (int k = 0; k <= 3; ++k) {
        const double ref = lag.coeff(k).get_d();
        EXPECT_NEAR(scaled.coeff(k).get_d(), ref, 1e-4 * std::abs(ref));
    }
}

TEST(Eigenfunction, GroundStateAndEnergy) {
    const PTParams p{Rational(2), Rational(3)};
    const SpectralState s0 = eigenfunction(0, p);
    EXPECT_EQ(s0.f.mu(), Rational(1));
    EXPECT_EQ(s0.f.nu(), Rational(3, 2));
    EXPECT_EQ(s0.f.num().degree(), 0);
    EXPECT_EQ(s0.energy, Rational(0));
    EXPECT_EQ(eigenfunction(2, p).energy, Rational(56));  // 4*2*(2+2+3)
}

TEST(Eigenfunction, SolvesTheSchrodingerEquationInX) {
    std::mt19937 rng(19);
    for (const PTParams& p : {PTParams{Rational(2), Rational(3)}, PTParams{Rational(5, 3), Rational(7, 4)}})
        for (long n = 0; n <= 4; ++n) {
            const SpectralState s = eigenfunction(n, p);
            for (int k = 0; k < 8; ++k) {
                const Rational e = random_rational(rng, 9, 10);
                EXPECT_EQ(schrodinger_x_residual(as_xseed(s.f), p.g, p.h, s.energy, e), 0) << n;
            }
            // same check through the library's eta-form operator
            EXPECT_TRUE(schrodinger_residual(s.f, pt_potential(p), s.energy).is_zero());
        }
}

TEST(VirtualState, Energies) {
    const PTParams p{Rational(3, 7), Rational(4)};
    EXPECT_EQ(virtual_energy({SeedKind::I, 2}, p), Rational(-123, 7));
    const PTParams q{Rational(11, 3), Rational(5, 2)};
    EXPECT_EQ(virtual_energy({SeedKind::III, 1}, q), -8 * (q.g + q.h - 2));
    EXPECT_EQ(virtual_energy({SeedKind::II, 1}, q), -4 * (q.g - Rational(3, 2)) * (q.h + Rational(3, 2)));
}

TEST(VirtualState, SolvesTheSchrodingerEquationWithItsEnergy) {
    std::mt19937 rng(23);
    for (int trial = 0; trial < 5; ++trial) {
        const PTParams p{random_rational(rng, 20, 6) + 4, random_rational(rng, 20, 6) + 4};
        for (SeedKind k : {SeedKind::I, SeedKind::II, SeedKind::III})
            for (int v = 1; v <= 3; ++v) {
                const SpectralState s = virtual_state({k, v}, p);
                for (int j = 0; j < 8; ++j) {
                    const Rational e = random_rational(rng, 9, 10);
                    ASSERT_EQ(schrodinger_x_residual(as_xseed(s.f), p.g, p.h, s.energy, e), 0);
                }
            }
    }
}

TEST(DegreeCondition, Examples) {
    EXPECT_FALSE(degree_condition({SeedKind::I, 1}, {Rational(2), Rational(4)}));
    EXPECT_EQ(seed_polynomial({SeedKind::I, 1}, {Rational(2), Rational(4)}).degree(), 0);
    EXPECT_FALSE(degree_condition({SeedKind::II, 1}, {Rational(5), Rational(3)}));
    EXPECT_LT(seed_polynomial({SeedKind::II, 1}, {Rational(5), Rational(3)}).degree(), 1);
    // type III drops degree where g + h - 1 - k = 0: here k = 4
    EXPECT_EQ(seed_polynomial({SeedKind::III, 2}, {Rational(2), Rational(3)}).degree(), 1);
    EXPECT_FALSE(degree_condition({SeedKind::III, 2}, {Rational(2), Rational(3)}));
    EXPECT_TRUE(degree_condition({SeedKind::III, 2}, {Rational(2), Rational(7, 2)}));
}

TEST(Norm, HalfHalfGroundState) { EXPECT_NEAR(norm_undeformed(0, {Rational(1, 2), Rational(1, 2)}), 0.5, 1e-15); }

TEST(Norm, MatchesIntegralOverX) {
    const double half_pi = std::numbers::pi / 2;
    {
        const PTParams p{Rational(2), Rational(3)};
        const UniPoly p0 = jacobi_poly(0, p.g - Rational(1, 2), p.h - Rational(1, 2));
        const double integral = integrate([&](double x) { return phi_squared(2, 3, p0, x); }, 0.0, half_pi);
        EXPECT_NEAR(integral / norm_undeformed(0, p), 1.0, 1e-10);
    }
    {
        const PTParams p{Rational(3, 2), Rational(5, 2)};
        double ratio[2];
        for (long n = 0; n <= 1; ++n) {
            const UniPoly pn = jacobi_poly(n, p.g - Rational(1, 2), p.h - Rational(1, 2));
            const double integral = integrate([&](double x) { return phi_squared(1.5, 2.5, pn, x); }, 0.0, half_pi);
            ratio[n] = integral / norm_undeformed(n, p);
        }
        EXPECT_NEAR(ratio[1] / ratio[0], 1.0, 1e-10);
    }
}

TEST(Norm, RejectsNonpositiveGammaArguments) {
    EXPECT_THROW(norm_undeformed(0, {Rational(-1), Rational(1)}), DomainError);
}

TEST(Seeds, Parse) {
    const auto s = parse_seeds("I2,II1,III3");
    ASSERT_EQ(s.size(), 3u);
    EXPECT_EQ(s[0], (SeedSpec{SeedKind::I, 2}));
    EXPECT_EQ(s[1], (SeedSpec{SeedKind::II, 1}));
    EXPECT_EQ(s[2], (SeedSpec{SeedKind::III, 3}));
    EXPECT_THROW(parse_seed("IV1"), std::invalid_argument);
    EXPECT_THROW(parse_seed("I0"), std::invalid_argument);
    EXPECT_THROW(parse_seed("II"), std::invalid_argument);
}
