#include <gtest/gtest.h>

#include <random>

#include "miop/confluence.hpp"
#include "oracles.hpp"
#include "support.hpp"

using namespace miop;
using namespace miop::test;

namespace {

DeformedSystem with_denominator(UniPoly d) {
    DeformedSystem s = build_system({}, {Rational(3), Rational(5)});
    s.den = std::move(d);
    return s;
}

bool contains(const std::vector<CurveCandidate>& cs, const Rational& g) {
    return std::any_of(cs.begin(), cs.end(), [&](const CurveCandidate& c) { return c.g == g; });
}

}  // namespace

TEST(Confluence, GroupIaAtFour) {
    const ConfluentFamily fam = make_family(find_case("Ia"), Rational(4));
    EXPECT_EQ(fam.eta0, Rational(5, 2));
    EXPECT_EQ(fam.l, 2);
    EXPECT_EQ(fam.m, 3);
    EXPECT_EQ(fam.w, pow(linear(-5, 2), 2));
    EXPECT_EQ(fam.qres.degree(), 0);
    EXPECT_TRUE(fam.extra_simple_roots.empty());
}

TEST(Confluence, IsolatedPointKeepsTheSimpleZero) {
    const ConfluentFamily fam = make_family(find_case("X_I1II2"), Rational(41, 2));
    EXPECT_EQ(fam.eta0, Rational(-2));
    EXPECT_EQ(fam.l, 2);
    ASSERT_EQ(fam.extra_simple_roots.size(), 1u);
    EXPECT_EQ(fam.extra_simple_roots.front(), Rational(-3));
    // deg q = ell - m
    EXPECT_EQ(fam.qres.degree(), fam.base.ell - fam.m);
}

TEST(Confluence, QuadraticCurveFamily) {
    const ConfluentFamily fam = make_family(find_case("X_II2III2"), Rational(4));
    EXPECT_EQ(fam.base.params.g, Rational(16, 7));
    EXPECT_EQ(fam.eta0, Rational(3, 4));
    EXPECT_EQ(fam.m, 3);
}

TEST(Confluence, OriginFamilyHasItsZeroInside) {
    for (int h = 2; h <= 5; ++h) {
        const ConfluentFamily fam = make_family(find_case("X_I1II1"), Rational(h));
        EXPECT_EQ(fam.eta0, Rational(0));
        EXPECT_TRUE(proportional(fam.base.den, pow(eta(), 3)));
    }
}

TEST(Confluence, StructuralErrors) {
    EXPECT_THROW(analyze_confluence(with_denominator(linear(-2, 1) * linear(3, 1))), DomainError);
    EXPECT_THROW(analyze_confluence(with_denominator(pow(linear(-2, 1), 2) * linear(3, 1))), MultiplicityLawError);
    EXPECT_THROW(analyze_confluence(with_denominator(pow(linear(-2, 1), 3) * pow(linear(-3, 1), 3))), MultipleClustersError);
    // sextic zero: l = 3 obeys the law
    const ConfluentFamily f6 = analyze_confluence(with_denominator(pow(linear(-2, 1), 6)));
    EXPECT_EQ(f6.l, 3);
    EXPECT_EQ(f6.w, pow(linear(-2, 1), 3));
}

TEST(Confluence, WrongGroupFormIsAMismatch) {
    const auto& cc = find_case("Ia");
    const DeformedSystem s = build_system(cc.seeds, {cc.g_at(Rational(4)), Rational(4)});
    EXPECT_THROW(analyze_confluence(s, Group::III), MismatchError);
}

TEST(ReduceMode, CancelsOneFactorAndChecksIt) {
    const ConfluentFamily fam = make_family(find_case("Ia"), Rational(5));
    for (long n = 0; n <= 3; ++n) {
        const DeformedMode m = numerator_mode(fam.base, n);
        EXPECT_EQ(reduce_mode(fam, m).degree(), m.numQ.degree() - 1);
    }
    ConfluentFamily wrong = fam;
    wrong.eta0 += 1;
    EXPECT_THROW(reduce_mode(wrong, numerator_mode(fam.base, 0)), DivisionError);
    DeformedMode fake = numerator_mode(fam.base, 0);
    fake.numQ = linear(-fam.eta0, 1) * linear(-fam.eta0, 1);
    EXPECT_THROW(reduce_mode(fam, fake), ZeroAtEta0Error);
}

// Rescaling the Wronskians leaves P_n unchanged once w is fixed.
TEST(ReduceMode, InvariantUnderWronskianScale) {
    const auto& cc = find_case("IIIa");
    const Rational h = cc.default_h();
    const ConfluentFamily fam = make_family(cc, h);
    DeformedSystem scaled = fam.base;
    scaled.den *= Rational(-7, 3);
    scaled.den_scale /= Rational(-7, 3);
    const ConfluentFamily fam2 = analyze_confluence(scaled, cc.group);
    for (long n = 0; n <= 3; ++n) {
        DeformedMode m = numerator_mode(fam.base, n);
        const UniPoly p = reduce_mode(fam, m);
        m.numQ *= Rational(11);
        m.scale /= 11;
        EXPECT_EQ(reduce_mode(fam2, m), p);
    }
}

TEST(Catalog, RangeChecks) {
    EXPECT_TRUE(range_check(find_case("Ia"), Rational(4)).admissible);
    const RangeReport r3 = range_check(find_case("Ia"), Rational(3));
    EXPECT_FALSE(r3.admissible);
    EXPECT_NE(std::find(r3.reasons.begin(), r3.reasons.end(), "hbar=1 excluded"), r3.reasons.end());
    const RangeReport r4 = range_check(find_case("IVa"), Rational(7, 5));
    EXPECT_FALSE(r4.admissible);
    EXPECT_NE(std::find(r4.reasons.begin(), r4.reasons.end(), "needs h<13/10"), r4.reasons.end());
    EXPECT_FALSE(range_check(find_case("Ia"), Rational(27, 10)).admissible);
    EXPECT_FALSE(range_check(find_case("IVa"), Rational(1)).admissible);
    EXPECT_THROW(find_case("Va"), std::invalid_argument);
}

TEST(Catalog, EverySampleIsAdmissibleForOrthogonalCases) {
    for (const auto& cc : catalog()) {
        if (!cc.orthogonal) continue;
        for (const auto& h : cc.samples) {
            const RangeReport r = range_check(cc, h);
            EXPECT_TRUE(r.admissible) << cc.id << " h=" << to_string(h) << ": " << (r.reasons.empty() ? "" : r.reasons.front());
        }
    }
}

TEST(Catalog, ShiftsAndRelations) {
    std::mt19937 rng(37);
    for (const auto& id : {"Ia", "IIa", "IIIa", "IVa"}) {
        const auto& a = find_case(id);
        for (const auto& h : random_in_range(a, 2, rng)) {
            const ShiftResult r = shift_map(a, h);
            EXPECT_EQ(r.case_b, a.partner);
            EXPECT_EQ(r.gbar_a, r.gbar_b) << id;
            EXPECT_TRUE(r.potential_equal) << id;
            const Rational hb = r.hbar;
            Rational expected;
            switch (a.group) {
                case Group::I: expected = 3 * (hb - 1) / (4 * hb - 1); break;
                case Group::II: expected = (hb + 2) / (4 * hb - 1); break;
                case Group::III: expected = (hb - 3) / (4 * hb - 3); break;
                default: expected = 3 * hb / (4 * hb - 3); break;
            }
            EXPECT_EQ(r.gbar_a, expected) << id;
        }
    }
    // the stated h offsets between partners
    EXPECT_EQ(shift_map(find_case("Ia"), Rational(4)).h_b, Rational(1));
    EXPECT_EQ(shift_map(find_case("IIa"), Rational(4)).h_b, Rational(2));
    EXPECT_EQ(shift_map(find_case("IIIa"), Rational(1, 4)).h_b, Rational(13, 4));
    EXPECT_EQ(shift_map(find_case("IVa"), Rational(4, 5)).h_b, Rational(14, 5));
}

TEST(Curves, CandidatesAtSampleH) {
    EXPECT_TRUE(contains(find_curve_candidates(parse_seeds("I2,III1"), Rational(4)), Rational(3, 7)));
    EXPECT_TRUE(contains(find_curve_candidates(parse_seeds("II2,III2"), Rational(4)), Rational(16, 7)));
    const auto pts = find_curve_candidates(parse_seeds("I1,II2"), Rational(41, 2));
    EXPECT_TRUE(contains(pts, Rational(113, 2)));
    for (const auto& c : pts)
        if (c.g == Rational(113, 2)) {
            EXPECT_EQ(c.eta0, std::vector<Rational>{Rational(-2)});
        }
}

TEST(Curves, LinearFractionalFit) {
    std::vector<CurveSample> samples;
    for (int k = 8; k <= 13; ++k) {
        const Rational h = frac(k, 2);
        CurveSample s{h, {}};
        for (const auto& c : find_curve_candidates(parse_seeds("I2,III1"), h)) s.gs.push_back(c.g);
        samples.push_back(std::move(s));
    }
    const auto fits = fit_curves(samples);
    ASSERT_FALSE(fits.empty());
    EXPECT_TRUE(fits.front().linear_fractional());
    EXPECT_EQ(fits.front().map, *find_case("Ia").g_of_h);
    EXPECT_GE(fits.front().matched_h.size(), 4u);
}

TEST(Properties, MultiplicitiesAreOneOrThree) {
    std::mt19937 rng(41);
    for (const auto& cc : catalog()) {
        std::vector<Rational> hs = cc.g_of_h ? random_in_range(cc, 10, rng) : cc.samples;
        for (const auto& h : hs) {
            const DeformedSystem s = build_system(cc.seeds, {cc.g_at(h), h});
            for (const auto& f : squarefree_decompose(s.den).factors)
                EXPECT_TRUE(f.multiplicity == 1 || f.multiplicity == 3) << cc.id << " h=" << to_string(h);
        }
    }
}

TEST(Properties, OffCurveIsSquareFree) {
    std::mt19937 rng(43);
    for (const auto& cc : catalog()) {
        std::vector<Rational> hs = cc.g_of_h ? random_in_range(cc, 10, rng) : cc.samples;
        for (const auto& h : hs) {
            const DeformedSystem s = build_system(cc.seeds, {cc.g_at(h) + Rational(1, 1000), h});
            EXPECT_EQ(squarefree_part(s.den).degree(), s.den.degree()) << cc.id << " h=" << to_string(h);
        }
    }
}

TEST(Properties, MergedZeroLocation) {
    std::mt19937 rng(47);
    for (const auto& cc : catalog()) {
        if (!cc.orthogonal) continue;
        for (const auto& h : random_in_range(cc, 10, rng)) {
            const ConfluentFamily fam = make_family(cc, h);
            EXPECT_GT(abs(fam.eta0), 1) << cc.id << " h=" << to_string(h);
        }
    }
    const ConfluentFamily origin = make_family(find_case("X_I1II1"), Rational(3));
    EXPECT_EQ(origin.eta0, 0);
}

TEST(Json, FamilyRecord) {
    const ConfluentFamily fam = make_family(find_case("Ia"), Rational(4));
    const auto j = family_to_json(fam, true);
    EXPECT_EQ(j["caseId"], "Ia");
    EXPECT_EQ(j["eta0"], "5/2");
    EXPECT_EQ(j["l"], 2);
    EXPECT_EQ(j["admissible"], true);
    for (const char* key : {"h", "g", "w", "q", "extra_simple_roots"}) EXPECT_TRUE(j.contains(key)) << key;
}
