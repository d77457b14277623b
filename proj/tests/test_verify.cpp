#include <gtest/gtest.h>

#include <cmath>
#include <cstdlib>
#include <random>

#include "miop/verify.hpp"
#include "oracles.hpp"
#include "support.hpp"

using namespace miop;
using namespace miop::test;

namespace {

// Textbook Jacobi norm with weight (1-x)^a (1+x)^b on [-1, 1].
double jacobi_norm(long n, double a, double b) {
    return std::exp((a + b + 1) * std::log(2.0) + std::lgamma(n + a + 1) + std::lgamma(n + b + 1) -
                    std::lgamma(n + a + b + 1) - std::lgamma(n + 1.0)) /
           (2.0 * n + a + b + 1);
}

std::vector<long> index_set(const CatalogCase& cc) {
    std::vector<long> ns(cc.extra_modes.begin(), cc.extra_modes.end());
    std::sort(ns.begin(), ns.end());
    for (long n = 0; n <= (cc.group == Group::IV ? 2 : 3); ++n) ns.push_back(n);
    return ns;
}

}  // namespace

TEST(GaussJacobi, MomentsAreExact) {
    const std::vector<std::pair<double, double>> ab = {{0, 0}, {0.5, -0.3}, {2.5, 1.5}, {-0.5, -0.5}, {-0.75, 3.25}};
    for (const auto& [a, b] : ab) {
        const QuadratureRule r = gauss_jacobi(12, a, b);
        ASSERT_EQ(r.nodes.size(), 12u);
        EXPECT_TRUE(std::is_sorted(r.nodes.begin(), r.nodes.end()));
        for (double w : r.weights) EXPECT_GT(w, 0);
        for (int k = 0; k <= 23; ++k) {
            double s = 0;
            for (std::size_t i = 0; i < r.nodes.size(); ++i) s += r.weights[i] * std::pow(r.nodes[i], k);
            const double ref = jacobi_moment(k, a, b);
            EXPECT_NEAR(s, ref, 1e-12 * std::max(1.0, std::abs(ref))) << "a=" << a << " b=" << b << " k=" << k;
        }
    }
}

TEST(GaussJacobi, LargeRulesStayAccurate) {
    const QuadratureRule r = gauss_jacobi(512, 3.5, -0.25);
    double s = 0;
    for (double w : r.weights) s += w;
    EXPECT_NEAR(s / jacobi_moment(0, 3.5, -0.25), 1.0, 1e-12);
    for (std::size_t i = 1; i < r.nodes.size(); ++i) EXPECT_LT(r.nodes[i - 1], r.nodes[i]);
}

TEST(GaussJacobi, RejectsNonIntegrableWeights) {
    EXPECT_THROW(gauss_jacobi(8, -1, 0), DomainError);
    EXPECT_THROW(gauss_jacobi(8, 0, -1.5), DomainError);
}

TEST(GaussJacobi, NodeCountFromEnvironment) {
    ::setenv("MIOP_NODES", "64", 1);
    EXPECT_EQ(default_nodes(), 64);
    ::unsetenv("MIOP_NODES");
    EXPECT_EQ(default_nodes(), 128);
}

TEST(Gram, UndeformedIsDiagonal) {
    const PTParams p{Rational(7, 3), Rational(11, 4)};
    const Rational half(1, 2);
    const double a = Rational(p.g - half).get_d(), b = Rational(p.h - half).get_d();
    std::vector<UniPoly> ps;
    for (long n = 0; n <= 5; ++n) ps.push_back(jacobi_poly(n, p.g - half, p.h - half));
    const auto g = detail::gram_matrix(ps, UniPoly(Rational(1)), gauss_jacobi(64, a, b));
    for (std::size_t i = 0; i < ps.size(); ++i)
        for (std::size_t j = 0; j < ps.size(); ++j) {
            if (i == j) EXPECT_NEAR(g[i][i] / jacobi_norm(static_cast<long>(i), a, b), 1.0, 1e-9) << i;
            else EXPECT_LT(std::abs(g[i][j]) / std::sqrt(g[i][i] * g[j][j]), 1e-9) << i << "," << j;
        }
    // eta-space norms and the x-space formula differ by one constant
    const double c = g[0][0] / norm_undeformed(0, p);
    for (std::size_t n = 1; n < ps.size(); ++n) EXPECT_NEAR(g[n][n] / norm_undeformed(static_cast<long>(n), p) / c, 1.0, 1e-9);
}

TEST(Gram, DoublingConverges) {
    const auto& cc = find_case("IIIa");
    const ConfluentFamily fam = make_family(cc, cc.default_h());
    const std::vector<long> ns{0, 1, 2, 3};
    std::vector<UniPoly> ps;
    for (long n : ns) ps.push_back(family_polynomial(fam, n));
    const double a = fam.base.gbar.get_d() - 0.5, b = fam.base.hbar.get_d() - 0.5;
    const auto g32 = detail::gram_matrix(ps, fam.w, gauss_jacobi(32, a, b));
    const auto g64 = detail::gram_matrix(ps, fam.w, gauss_jacobi(64, a, b));
    const auto g128 = detail::gram_matrix(ps, fam.w, gauss_jacobi(128, a, b));
    const auto g256 = detail::gram_matrix(ps, fam.w, gauss_jacobi(256, a, b));
    EXPECT_LT(detail::max_rel_change(g128, g256), 1e-10);
    EXPECT_LE(detail::max_rel_change(g128, g256), detail::max_rel_change(g32, g64) + 1e-14);
}

TEST(Orthonormality, EveryFamilyIncludingAdditionalModes) {
    for (const auto& id : {"Ia", "IIa", "IIIa", "IVa"}) {
        const auto& cc = find_case(id);
        for (const auto& h : cc.samples) {
            const ConfluentFamily fam = make_family(cc, h);
            const OrthReport r = orthonormality_suite(fam, index_set(cc), product_norm_model(fam));
            EXPECT_LT(r.max_offdiag_rel, 1e-10) << id << " h=" << to_string(h);
            EXPECT_LT(r.doubling_change, 1e-10) << id;
            for (double e : r.diag_rel_err) EXPECT_LT(e, 1e-10) << id << " h=" << to_string(h);
            EXPECT_GT(r.constant_fit, 0) << id;
        }
    }
    EXPECT_EQ(index_set(find_case("IVa")), (std::vector<long>{-3, -2, 0, 1, 2}));
}

TEST(Orthonormality, RandomAdmissibleH) {
    std::mt19937 rng(73);
    for (const auto& id : group_case_ids()) {
        const auto& cc = find_case(id);
        if (!cc.orthogonal) continue;
        for (const auto& h : random_in_range(cc, 2, rng)) {
            const ConfluentFamily fam = make_family(cc, h);
            const OrthReport r = orthonormality_suite(fam, {0, 1, 2, 3}, product_norm_model(fam));
            EXPECT_LT(r.max_offdiag_rel, 1e-9) << id << " h=" << to_string(h);
            for (double e : r.diag_rel_err) EXPECT_LT(e, 1e-9) << id << " h=" << to_string(h);
        }
    }
}

TEST(Orthonormality, ClosedNormHasTheSameShape) {
    const auto& cc = find_case("IVa");
    const ConfluentFamily fam = make_family(cc, cc.default_h());
    const OrthReport r = orthonormality_suite(fam, {0, 1, 2}, [&](long n) { return closed_form_norm("IVa", cc.default_h(), n); });
    for (double e : r.diag_rel_err) EXPECT_LT(e, 1e-10);
}

TEST(Orthonormality, InadmissibleHIsRefused) {
    const ConfluentFamily fam = make_family(find_case("IVa"), Rational(7, 5));
    EXPECT_THROW(orthonormality_suite(fam, {0, 1}, product_norm_model(fam)), RangeError);
}

TEST(Orthonormality, ReportFormats) {
    const ConfluentFamily fam = make_family(find_case("Ia"), Rational(4));
    const OrthReport r = orthonormality_suite(fam, {-2, 0, 1}, product_norm_model(fam));
    const auto j = to_json(r);
    EXPECT_EQ(j["caseId"], "Ia");
    EXPECT_EQ(j["h"], "4/1");
    EXPECT_EQ(j["diag_n"].size(), 2u);
    const std::string csv = to_csv(r);
    EXPECT_EQ(csv.rfind("case,h,n,m,integral,expected,rel_err\n", 0), 0u);
    EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 1 + 6);
    EXPECT_EQ(to_csv(r, false).find("case,"), std::string::npos);
}

TEST(CrossCheck, ConstantsAtDefaultH) {
    const std::vector<std::pair<std::string, Rational>> expected = {
        {"Ia", Rational(-2, 7)}, {"IIa", Rational(-2, 7)}, {"IIIa", Rational(1, 2)}, {"IVa", Rational(-500, 6859)}};
    for (const auto& [id, c] : expected) {
        const CrossCheck x = closed_form_crosscheck(id, find_case(id).default_h(), 5);
        EXPECT_TRUE(x.match) << id;
        EXPECT_EQ(x.constant, c) << id;
    }
}

TEST(Limit, GroupsOneToThreeConvergeLinearlyInOneOverH) {
    for (const auto& id : {"Ia", "IIa", "IIIa"})
        for (long n = 0; n <= 2; ++n) {
            const LimitCheck a = laguerre_limit_check(id, Rational(100000), n);
            const LimitCheck b = laguerre_limit_check(id, Rational(1000000), n);
            EXPECT_LT(b.rel_err, 1e-4) << id << " n=" << n;
            const double ratio = b.rel_err / a.rel_err;
            EXPECT_GE(ratio, 0.05) << id << " n=" << n;
            EXPECT_LE(ratio, 0.2) << id << " n=" << n;
        }
}

TEST(Limit, GroupFourHasTheLaguerreShape) {
    for (long n = 0; n <= 2; ++n) EXPECT_LT(laguerre_limit_check("IVa", Rational(1000000), n).shape_err, 1e-4) << n;
}

TEST(Limit, AdditionalModesOfGroupFour) {
    EXPECT_LT(laguerre_extra_check(Rational(1000000), -3).rel_err, 1e-4);
    EXPECT_LT(laguerre_extra_check(Rational(1000000), -2).rel_err, 1e-4);
}

TEST(Limit, PrefactorIsExactInTheLimit) {
    for (const auto& id : {"Ia", "IIa", "IIIa", "IVa"})
        for (long n = 0; n <= 2; ++n) EXPECT_LT(limit_prefactor_spread(id, Rational(1000000), n), 1e-3) << id << " n=" << n;
}

TEST(Limit, ReferenceSolvesItsEquation) {
    for (const auto& id : {"Ia", "IIa", "IIIa"}) {
        const auto& cc = find_case(id);
        for (long n = 0; n <= 3; ++n) {
            const UniPoly ref = limit_reference(cc, n, static_cast<int>(n) + 4);
            EXPECT_TRUE(residual(limit_ode(cc.group, gbar_limit(cc), n, cc.gamma), ref).is_zero()) << id << " n=" << n;
        }
    }
}
