#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "darboux.hpp"
#include "linalg.hpp"

namespace miop {

/// g = num(h) / den(h).
struct RationalMap {
    UniPoly num, den{Rational(1)};

    [[nodiscard]] bool defined_at(const Rational& h) const { return !is_zero_value(den(h)); }
    [[nodiscard]] Rational operator()(const Rational& h) const {
        const Rational d = den(h);
        if (is_zero_value(d)) throw DomainError("g(h) is undefined at h = " + miop::to_string(h));
        return num(h) / d;
    }
    [[nodiscard]] int order() const { return std::max(num.degree(), den.degree()); }
    [[nodiscard]] std::string to_string() const {
        return "(" + miop::to_string(num, "h") + ")/(" + miop::to_string(den, "h") + ")";
    }
    friend bool operator==(const RationalMap& a, const RationalMap& b) { return a.num * b.den == b.num * a.den; }
};

enum class Group { I, II, III, IV, None };

inline std::string to_string(Group g) {
    switch (g) {
        case Group::I: return "I";
        case Group::II: return "II";
        case Group::III: return "III";
        case Group::IV: return "IV";
        case Group::None: break;
    }
    return "-";
}

/// The linear factor whose cube is D in the group families:
/// 2 hb eta - 2 eta - 2 hb - 1 for Groups I, II and 2 hb eta - 2 hb + 3 for III, IV.
inline UniPoly group_linear(Group g, const Rational& hbar) {
    if (g == Group::I || g == Group::II) return linear(-2 * hbar - 1, 2 * hbar - 2);
    if (g == Group::III || g == Group::IV) return linear(-2 * hbar + 3, 2 * hbar);
    throw std::invalid_argument("no group form outside Groups I-IV");
}

struct CatalogCase {
    std::string id;
    std::vector<SeedSpec> seeds;
    std::optional<RationalMap> g_of_h;  // absent for isolated points
    std::vector<PTParams> points;       // isolated (g, h) points
    Group group = Group::None;
    Rational gamma{0};
    int jshift = 0, kshift = 0;  // gbar - g, hbar - h
    std::vector<Rational> samples;  // first is the default h
    std::optional<Rational> h_lo, h_hi;  // open window
    std::vector<Rational> h_excluded;
    bool orthogonal = true;
    std::string partner;  // same-group member with the same (gbar, hbar) relation
    std::vector<long> extra_modes;

    [[nodiscard]] const Rational& default_h() const { return samples.front(); }

    [[nodiscard]] Rational g_at(const Rational& h) const {
        if (g_of_h) return (*g_of_h)(h);
        for (const auto& p : points)
            if (p.h == h) return p.g;
        throw DomainError(id + " is only defined at its catalogued points");
    }
};

namespace detail {

inline RationalMap lf(const Rational& a, const Rational& b, const Rational& c, const Rational& d) {
    return {linear(b, a), linear(d, c)};
}

inline std::vector<Rational> qs(std::initializer_list<Rational> v) { return v; }

}  // namespace detail

inline const std::vector<CatalogCase>& catalog() {
    static const std::vector<CatalogCase> cases = [] {
        using detail::lf;
        using detail::qs;
        const Rational half(1, 2);
        std::vector<CatalogCase> c;
        auto add = [&](std::string id, const char* seeds, RationalMap map, Group g, int gamma, std::vector<Rational> samples,
                       std::optional<Rational> lo, std::optional<Rational> hi, std::vector<Rational> excl, std::string partner,
                       std::vector<long> extra) {
            CatalogCase cc;
            cc.id = std::move(id);
            cc.seeds = parse_seeds(seeds);
            cc.g_of_h = std::move(map);
            cc.group = g;
            cc.gamma = gamma;
            const auto [M, N, L] = count_seeds(cc.seeds);
            cc.jshift = M - N - L;
            cc.kshift = -M + N - L;
            cc.samples = std::move(samples);
            cc.h_lo = lo;
            cc.h_hi = hi;
            cc.h_excluded = std::move(excl);
            cc.partner = std::move(partner);
            cc.extra_modes = std::move(extra);
            c.push_back(std::move(cc));
        };
        // windows are the appendix strengthenings carried to the partner by h -> h + (K_a - K_b)
        add("Ia", "I2,III1", lf(3, -9, 4, -9), Group::I, 2, qs({4, 5, 6}), Rational(27, 10), {}, {}, "Ib", {-2});
        add("Ib", "II1,II2,III1", lf(15, 9, 4, 3), Group::I, 2, qs({1, 2, 3}), Rational(-3, 10), {}, {}, "Ia", {-2});
        add("IIa", "I1,III2", lf(1, 0, 4, -9), Group::II, 2, qs({4, 5, 6}), Rational(9, 4), {}, qs({3}), "IIb", {-3});
        add("IIb", "II1,III2", lf(9, 0, 4, -1), Group::II, 2, qs({2, 3, 4}), Rational(1, 4), {}, qs({1}), "IIa", {-3});
        add("IIIa", "II2,III1", lf(9, -9, 4, -3), Group::III, 2, qs({Rational(1, 4), Rational(-1, 4), Rational(1, 3)}),
            -half, Rational(3, 4), qs({0}), "IIIb", {-2});
        add("IIIb", "I1,I2,III1", lf(-3, 9, 4, -15), Group::III, 2,
            qs({Rational(13, 4), Rational(11, 4), Rational(10, 3)}), Rational(5, 2), Rational(15, 4), qs({3}), "IIIa", {-2});
        add("IVa", "II1,III1,III2", lf(15, -24, 4, -7), Group::IV, 4, qs({Rational(4, 5), Rational(6, 5), Rational(3, 5)}),
            half, Rational(13, 10), qs({1}), "IVb", {-3, -2});
        add("IVb", "I1,III1,III2", lf(7, -24, 4, -15), Group::IV, 4,
            qs({Rational(14, 5), Rational(16, 5), Rational(13, 5)}), Rational(5, 2), Rational(33, 10), qs({3}), "IVa", {-3, -2});

        // quadratic curve; eta0 = 1 - 3/(h(h-1)) sits inside (-1, 1)
        add("X_II2III2", "II2,III2", RationalMap{from_coeffs({-12, -5, 5}), from_coeffs({-3, -2, 2})}, Group::None, 0,
            qs({4, 5, 6, 7}), {}, {}, {}, "", {});
        c.back().orthogonal = false;

        CatalogCase pts;
        pts.id = "X_I1II2";
        pts.seeds = parse_seeds("I1,II2");
        pts.points = {{Rational(113, 2), Rational(41, 2)}, {Rational(131, 2), Rational(25, 2)}, {Rational(115, 2), Rational(16)}};
        pts.jshift = 0;
        pts.kshift = 0;
        pts.samples = qs({Rational(41, 2), Rational(25, 2), 16});
        c.push_back(std::move(pts));

        // D = eta^3 on g = 1 - h: the merged singularity is in the physical domain
        add("X_I1II1", "I1,II1", RationalMap{from_coeffs({1, -1}), UniPoly(Rational(1))}, Group::None, 0, qs({2, 3, 4, 5}), {},
            {}, {}, "", {});
        c.back().orthogonal = false;
        return c;
    }();
    return cases;
}

inline const CatalogCase& find_case(const std::string& id) {
    for (const auto& c : catalog())
        if (c.id == id) return c;
    throw std::invalid_argument("unknown case '" + id + "'");
}

inline std::vector<std::string> group_case_ids() { return {"Ia", "Ib", "IIa", "IIb", "IIIa", "IIIb", "IVa", "IVb"}; }

struct RangeReport {
    bool admissible = true;
    std::vector<std::string> reasons;
};

inline RangeReport range_check(const CatalogCase& cc, const Rational& h) {
    RangeReport r;
    auto fail = [&](std::string why) {
        r.admissible = false;
        r.reasons.push_back(std::move(why));
    };
    Rational g;
    try {
        g = cc.g_at(h);
    } catch (const DomainError& e) {
        fail(e.what());
        return r;
    }
    const Rational gbar = g + cc.jshift, hbar = h + cc.kshift;
    if (cc.group == Group::I || cc.group == Group::II) {
        if (hbar == 1) fail("hbar=1 excluded");
        if (hbar <= Rational(1, 4)) fail("needs hbar>1/4");
    } else if (cc.group == Group::III || cc.group == Group::IV) {
        if (hbar == 0) fail("hbar=0 excluded");
        if (hbar >= Rational(3, 4)) fail("needs hbar<3/4");
    }
    if (gbar <= Rational(-1, 2)) fail("needs gbar>-1/2");
    if (hbar <= Rational(-1, 2)) fail("needs hbar>-1/2");
    if (cc.h_lo && h <= *cc.h_lo) fail("needs h>" + to_string(*cc.h_lo));
    if (cc.h_hi && h >= *cc.h_hi) fail("needs h<" + to_string(*cc.h_hi));
    for (const auto& x : cc.h_excluded)
        if (h == x) fail("h=" + to_string(x) + " excluded");
    const PTParams p{g, h};
    for (const auto& s : cc.seeds)
        if (!degree_condition(s, p)) fail("seed " + to_string(s) + " drops degree");
    if (r.admissible) {
        try {
            const DeformedSystem sys = build_system(cc.seeds, p);
            const Rational lo(-1), hi(1);
            if (count_real_roots_open(sys.den, lo, hi) > 0 || is_zero_value(sys.den(lo)) || is_zero_value(sys.den(hi)))
                fail("D has a zero in [-1,1]");
        } catch (const DependentSeedsError&) {
            fail("seeds are linearly dependent");
        }
    }
    return r;
}

/// Isolated triangular numbers: returns l with m = l(l+1)/2, or 0.
inline int triangular_root(int m) {
    for (int l = 1; l * (l + 1) / 2 <= m; ++l)
        if (l * (l + 1) / 2 == m) return l;
    return 0;
}

struct ConfluentFamily {
    DeformedSystem base;
    Rational eta0;
    int l = 0;
    int m = 0;
    UniPoly w;     // D = const (eta-eta0)^(l(l-1)/2) w
    UniPoly qres;  // w = (eta-eta0)^l q
    Rational kappa{1};  // w / (D / (eta-eta0)^(l(l-1)/2))
    std::vector<Rational> extra_simple_roots;
    std::optional<std::string> caseId;
    Group group = Group::None;
    Rational gamma{0};
};

/// Locates the unique multiple zero of D and splits D into (eta-eta0)^(l(l-1)/2) w.
/// With a group given, w is normalized to the squared group factor, else monic.
inline ConfluentFamily analyze_confluence(const DeformedSystem& sys, Group group = Group::None) {
    if (sys.den.degree() < 2) throw DomainError("D has no multiple zero");
    const auto sq = squarefree_decompose(sys.den);
    std::vector<SquarefreeFactor> multiple;
    ConfluentFamily fam;
    for (const auto& f : sq.factors) {
        if (f.multiplicity > 1)
            multiple.push_back(f);
        else
            for (const auto& r : rational_roots(f.factor)) fam.extra_simple_roots.push_back(r.value);
    }
    if (multiple.empty()) throw DomainError("D is square-free: not on a fine-tuning curve");
    if (multiple.size() > 1 || multiple.front().factor.degree() != 1)
        throw MultipleClustersError("D has more than one multiple zero");
    const auto& cluster = multiple.front();
    fam.m = cluster.multiplicity;
    fam.l = triangular_root(fam.m);
    if (fam.l < 2) throw MultiplicityLawError("zero of multiplicity " + std::to_string(fam.m) + " is not l(l+1)/2");
    fam.eta0 = -cluster.factor.coeff(0);
    fam.base = sys;
    fam.group = group;
    const UniPoly lin = linear(-fam.eta0, 1);
    const UniPoly w_raw = exact_div(sys.den, pow(lin, static_cast<unsigned>(fam.l * (fam.l - 1) / 2)));
    if (group != Group::None) {
        fam.w = pow(group_linear(group, sys.hbar), 2);
        if (monic(fam.w) != monic(w_raw)) throw MismatchError("w does not have the group form " + to_string(fam.w));
        fam.gamma = (group == Group::IV) ? 4 : 2;
    } else {
        fam.w = monic(w_raw);
    }
    fam.kappa = fam.w.lc() / w_raw.lc();
    fam.qres = exact_div(fam.w, pow(lin, static_cast<unsigned>(fam.l)));
    return fam;
}

/// P_n = kappa Q_n / (eta-eta0)^(l(l-1)/2), scaled so that P_n / w is the
/// exact ratio W[seeds, phi_n] / W[seeds].
inline UniPoly reduce_mode(const ConfluentFamily& fam, const DeformedMode& mode) {
    const UniPoly cancel = pow(linear(-fam.eta0, 1), static_cast<unsigned>(fam.l * (fam.l - 1) / 2));
    auto [quot, rem] = divmod(mode.numQ, cancel);
    if (!rem.is_zero())
        throw DivisionError("Q_" + std::to_string(mode.n) + " does not vanish to order " +
                            std::to_string(fam.l * (fam.l - 1) / 2) + " at eta0 = " + to_string(fam.eta0));
    UniPoly p = quot * (fam.kappa * mode.scale / fam.base.den_scale);
    if (is_zero_value(p(fam.eta0))) throw ZeroAtEta0Error("P_" + std::to_string(mode.n) + " vanishes at eta0");
    return p;
}

inline UniPoly family_mode(const ConfluentFamily& fam, long n) { return reduce_mode(fam, numerator_mode(fam.base, n)); }

inline ConfluentFamily make_family(const CatalogCase& cc, const Rational& h) {
    const DeformedSystem sys = build_system(cc.seeds, {cc.g_at(h), h});
    ConfluentFamily fam = analyze_confluence(sys, cc.group);
    fam.caseId = cc.id;
    return fam;
}

// ---- discriminant curves -------------------------------------------------

/// D(eta; g) at fixed h with g left free. Built by interpolating exact
/// Wronskians at sample values of g, then checked at one extra sample.
inline ParamPoly denominator_in_g(const std::vector<SeedSpec>& seeds, const Rational& h) {
    if (seeds.empty()) throw std::invalid_argument("no seeds");
    const auto [M, N, L] = count_seeds(seeds);
    const int J = M - N - L, K = -M + N - L;
    const long m = static_cast<long>(seeds.size());
    const long pairs = m * (m - 1) / 2;
    long bound = pairs;
    for (const auto& s : seeds) bound += s.v;
    std::vector<Rational> gs;
    std::vector<UniPoly> ds;
    for (long i = 0; i < bound + 2; ++i) {
        const Rational g(i);
        auto fs = detail::seed_functions(seeds, {g, h});
        RawWronskian raw = wronskian_eta_raw(fs);
        // the (1 -+ eta) content of det is independent of g
        const Rational a = exponent_lambda_p(J, g) - raw.mu - frac(pairs, 2);
        const Rational b = exponent_lambda_p(K, h) - raw.nu - frac(pairs, 2);
        if (!is_integer(a) || !is_integer(b) || sgn(a) < 0 || sgn(b) < 0)
            throw ExponentMismatchError("unexpected (1 -+ eta) content in the seed Wronskian");
        UniPoly d = exact_div(raw.det, pow(linear(-1, 1), static_cast<unsigned>(a.get_num().get_si())) *
                                           pow(linear(1, 1), static_cast<unsigned>(b.get_num().get_si())));
        gs.push_back(g);
        ds.push_back(std::move(d));
    }
    int deg = 0;
    for (const auto& d : ds) deg = std::max(deg, d.degree());
    std::vector<UniPoly> coeffs;
    const std::vector<Rational> xs(gs.begin(), gs.end() - 1);
    for (int k = 0; k <= deg; ++k) {
        std::vector<Rational> ys;
        for (std::size_t i = 0; i + 1 < ds.size(); ++i) ys.push_back(ds[i].coeff(k));
        coeffs.push_back(interpolate(xs, ys));
    }
    ParamPoly pp(std::move(coeffs));
    if (at_param(pp, gs.back()) != ds.back()) throw MismatchError("g-degree bound of D exceeded");
    return pp;
}

struct CurveCandidate {
    Rational g;
    UniPoly D;
    std::vector<SquarefreeFactor> structure;
    std::vector<Rational> eta0;  // rational zeros of multiplicity > 1
};

/// Rational g at which D(eta; g, h) acquires a multiple zero of triangular
/// multiplicity away from +-1.
inline std::vector<CurveCandidate> find_curve_candidates(const std::vector<SeedSpec>& seeds, const Rational& h) {
    std::vector<CurveCandidate> out;
    const ParamPoly pp = denominator_in_g(seeds, h);
    if (pp.degree() < 2) return out;
    const UniPoly disc = discriminant(pp);
    if (disc.is_zero()) return out;
    for (const auto& root : rational_roots(disc)) {
        const Rational& g = root.value;
        if (is_zero_value(pp.lc()(g))) continue;
        UniPoly d = at_param(pp, g);
        if (d.degree() < 2) continue;
        CurveCandidate cand{g, d, squarefree_decompose(d).factors, {}};
        bool ok = false, bad = false;
        for (const auto& f : cand.structure) {
            if (f.multiplicity < 2) continue;
            if (triangular_root(f.multiplicity) < 2) bad = true;
            if (is_zero_value(f.factor(Rational(1))) || is_zero_value(f.factor(Rational(-1)))) bad = true;
            if (f.factor.degree() != 1) continue;  // irrational cluster
            ok = true;
            cand.eta0.push_back(-f.factor.coeff(0) / f.factor.lc());
        }
        if (ok && !bad) out.push_back(std::move(cand));
    }
    return out;
}

struct CurveSample {
    Rational h;
    std::vector<Rational> gs;
};

struct CurveFit {
    RationalMap map;
    std::vector<Rational> matched_h;
    [[nodiscard]] bool linear_fractional() const { return map.order() <= 1; }
};

namespace detail {

inline std::optional<RationalMap> solve_map(const std::vector<std::pair<Rational, Rational>>& pts, int p) {
    // g den(h) - num(h) = 0, unknowns num_0..num_p, den_0..den_p
    QMatrix a(pts.size(), static_cast<std::size_t>(2 * p + 2));
    for (std::size_t i = 0; i < pts.size(); ++i) {
        Rational hp(1);
        for (int k = 0; k <= p; ++k) {
            a(i, static_cast<std::size_t>(k)) = -hp;
            a(i, static_cast<std::size_t>(p + 1 + k)) = pts[i].second * hp;
            hp *= pts[i].first;
        }
    }
    auto ns = a.nullspace();
    if (ns.size() != 1) return std::nullopt;
    std::vector<Rational> num(ns[0].begin(), ns[0].begin() + p + 1), den(ns[0].begin() + p + 1, ns[0].end());
    RationalMap map{UniPoly(std::move(num)), UniPoly(std::move(den))};
    if (map.den.is_zero()) return std::nullopt;
    if (!map.num.is_zero()) {
        UniPoly c = gcd(map.num, map.den);
        map.num = exact_div(map.num, c);
        map.den = exact_div(map.den, c);
    }
    const Rational l = map.den.lc();
    map.num *= Rational(1 / l);
    map.den *= Rational(1 / l);
    return map;
}

}  // namespace detail

/// Rational maps g = num(h)/den(h) of order 1, then 2, through one candidate per
/// sample, kept when they hit at least max(4, 2p+2) samples exactly.
inline std::vector<CurveFit> fit_curves(const std::vector<CurveSample>& samples, int max_order = 2) {
    std::vector<CurveFit> fits;
    for (int p = 1; p <= max_order && fits.empty(); ++p) {
        const std::size_t need = static_cast<std::size_t>(2 * p + 1);
        const std::size_t min_hits = static_cast<std::size_t>(std::max(4, 2 * p + 2));
        std::vector<std::size_t> usable;
        for (std::size_t i = 0; i < samples.size(); ++i)
            if (!samples[i].gs.empty()) usable.push_back(i);
        if (usable.size() < std::max(need, min_hits)) continue;
        std::vector<bool> pick(usable.size(), false);
        std::fill(pick.begin(), pick.begin() + static_cast<long>(need), true);
        do {
            std::vector<std::size_t> idx;
            for (std::size_t i = 0; i < usable.size(); ++i)
                if (pick[i]) idx.push_back(usable[i]);
            std::vector<std::size_t> choice(need, 0);
            while (true) {
                std::vector<std::pair<Rational, Rational>> pts;
                for (std::size_t k = 0; k < need; ++k) pts.emplace_back(samples[idx[k]].h, samples[idx[k]].gs[choice[k]]);
                if (auto map = detail::solve_map(pts, p); map && map->order() == p) {
                    bool seen = std::any_of(fits.begin(), fits.end(), [&](const CurveFit& f) { return f.map == *map; });
                    if (!seen) {
                        CurveFit fit{*map, {}};
                        for (const auto& s : samples) {
                            if (!map->defined_at(s.h)) continue;
                            const Rational g = (*map)(s.h);
                            if (std::find(s.gs.begin(), s.gs.end(), g) != s.gs.end()) fit.matched_h.push_back(s.h);
                        }
                        if (fit.matched_h.size() >= min_hits) fits.push_back(std::move(fit));
                    }
                }
                std::size_t k = 0;
                while (k < need && ++choice[k] == samples[idx[k]].gs.size()) choice[k++] = 0;
                if (k == need) break;
            }
        } while (std::prev_permutation(pick.begin(), pick.end()));
    }
    std::sort(fits.begin(), fits.end(), [](const CurveFit& a, const CurveFit& b) { return a.matched_h.size() > b.matched_h.size(); });
    return fits;
}

// ---- same-group shifts -----------------------------------------------------

struct ShiftResult {
    std::string case_b;
    Rational h_b;
    Rational gbar_a, gbar_b, hbar;
    bool potential_equal = false;
};

/// Moves a group member to its partner at the same hbar and compares the
/// deformed potentials as rational functions of eta.
inline ShiftResult shift_map(const CatalogCase& a, const Rational& h_a) {
    if (a.partner.empty()) throw std::invalid_argument(a.id + " has no shift partner");
    const CatalogCase& b = find_case(a.partner);
    ShiftResult r;
    r.case_b = b.id;
    r.h_b = h_a + a.kshift - b.kshift;
    const ConfluentFamily fa = make_family(a, h_a), fb = make_family(b, r.h_b);
    r.gbar_a = fa.base.gbar;
    r.gbar_b = fb.base.gbar;
    r.hbar = fa.base.hbar;
    if (fb.base.hbar != r.hbar) throw MismatchError("shift does not preserve hbar");
    r.potential_equal = deformed_potential(fa.base).as_ratfunc() == deformed_potential(fb.base).as_ratfunc();
    return r;
}

inline nlohmann::json family_to_json(const ConfluentFamily& fam, bool admissible) {
    nlohmann::json roots = nlohmann::json::array();
    for (const auto& r : fam.extra_simple_roots) roots.push_back(to_string(r));
    return {{"caseId", fam.caseId ? nlohmann::json(*fam.caseId) : nlohmann::json(nullptr)},
            {"h", to_string(fam.base.params.h)},
            {"g", to_string(fam.base.params.g)},
            {"eta0", to_string(fam.eta0)},
            {"l", fam.l},
            {"m", fam.m},
            {"w", poly_to_json(fam.w)},
            {"q", poly_to_json(fam.qres)},
            {"extra_simple_roots", roots},
            {"admissible", admissible}};
}

}  // namespace miop
