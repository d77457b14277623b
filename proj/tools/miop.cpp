// miop: construct, scan and verify confluent multi-indexed Jacobi families.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <map>

#include "miop/verify.hpp"

using namespace miop;
using json = nlohmann::json;

namespace {

constexpr const char* kSchema = "miop/1";

struct Inadmissible : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// "a..b" (with step), "a,b,c" or a single value.
std::vector<Rational> parse_values(const std::string& text, const Rational& step) {
    std::vector<Rational> out;
    if (const auto dots = text.find(".."); dots != std::string::npos) {
        const Rational a = parse_rational(text.substr(0, dots)), b = parse_rational(text.substr(dots + 2));
        if (sgn(step) <= 0) throw std::invalid_argument("step must be positive");
        if (b < a) throw std::invalid_argument("empty range '" + text + "'");
        for (Rational v = a; v <= b; v += step) out.push_back(v);
        return out;
    }
    std::size_t start = 0;
    while (start <= text.size()) {
        const auto end = std::min(text.find(',', start), text.size());
        if (end > start) out.push_back(parse_rational(text.substr(start, end - start)));
        start = end + 1;
    }
    if (out.empty()) throw std::invalid_argument("no values in '" + text + "'");
    return out;
}

std::vector<long> parse_indices(const std::string& text) {
    std::vector<long> out;
    for (const auto& v : parse_values(text, Rational(1))) {
        if (!is_integer(v)) throw std::invalid_argument("mode index must be an integer: " + to_string(v));
        out.push_back(v.get_num().get_si());
    }
    return out;
}

json factors_to_json(const UniPoly& p) {
    json a = json::array();
    for (const auto& f : squarefree_decompose(p).factors) a.push_back({{"factor", to_string(f.factor)}, {"multiplicity", f.multiplicity}});
    return a;
}

bool same_seeds(std::vector<SeedSpec> a, std::vector<SeedSpec> b) {
    auto key = [](const SeedSpec& s) { return std::pair(static_cast<int>(s.kind), s.v); };
    auto less = [&](const SeedSpec& x, const SeedSpec& y) { return key(x) < key(y); };
    std::sort(a.begin(), a.end(), less);
    std::sort(b.begin(), b.end(), less);
    return a == b;
}

const CatalogCase* case_for_seeds(const std::vector<SeedSpec>& seeds) {
    for (const auto& cc : catalog())
        if (same_seeds(cc.seeds, seeds)) return &cc;
    return nullptr;
}

Rational resolve_h(const CatalogCase& cc, const std::string& text) {
    return text == "default" ? cc.default_h() : parse_rational(text);
}

// Non-orthogonal cases have no window to enforce; their reasons are only reported.
bool require_admissible(const CatalogCase& cc, const Rational& h) {
    const RangeReport rr = range_check(cc, h);
    if (rr.admissible) return true;
    if (!cc.orthogonal) return false;
    std::string why;
    for (const auto& r : rr.reasons) why += (why.empty() ? "" : "; ") + r;
    throw Inadmissible(cc.id + " at h=" + to_short_string(h) + ": " + why);
}

void emit(const json& j, const std::string& path) {
    if (path.empty()) {
        std::cout << j.dump(2) << '\n';
        return;
    }
    std::ofstream os(path);
    if (!os) throw std::runtime_error("cannot write " + path);
    os << j.dump(2) << '\n';
}

json envelope(const std::string& command) { return {{"schema", kSchema}, {"command", command}}; }

// ---- construct -----------------------------------------------------------------

struct ConstructArgs {
    std::string id, seeds, g, h = "default", n = "0..3", out;
};

int cmd_construct(const ConstructArgs& a) {
    const CatalogCase* cc = a.id.empty() ? nullptr : &find_case(a.id);
    std::vector<SeedSpec> seeds = cc ? cc->seeds : std::vector<SeedSpec>{};
    if (!a.seeds.empty()) seeds = parse_seeds(a.seeds);
    if (seeds.empty()) throw std::invalid_argument("construct needs --case or --seeds");
    if (!cc && a.h == "default") throw std::invalid_argument("--h is required with --seeds");
    const Rational h = cc ? resolve_h(*cc, a.h) : parse_rational(a.h);
    Rational g;
    if (!a.g.empty()) g = parse_rational(a.g);
    else if (cc) g = cc->g_at(h);
    else throw std::invalid_argument("--g is required with --seeds");
    // seed overrides leave the catalog window behind
    const bool catalogued = cc && a.seeds.empty() && a.g.empty();
    const bool admissible = catalogued && require_admissible(*cc, h);

    const DeformedSystem sys = build_system(seeds, {g, h});
    json j = envelope("construct");
    j["caseId"] = cc ? json(cc->id) : json(nullptr);
    j["system"] = to_json(sys);
    j["D_factors"] = factors_to_json(sys.den);
    try {
        ConfluentFamily fam = analyze_confluence(sys, catalogued ? cc->group : Group::None);
        if (catalogued) fam.caseId = cc->id;
        j["family"] = family_to_json(fam, admissible);
        json modes = json::array();
        for (long n : parse_indices(a.n)) {
            const UniPoly p = family_polynomial(fam, n);
            modes.push_back({{"n", n}, {"energy", to_string(eigen_energy(n, sys.params))}, {"P", poly_to_json(p)},
                             {"P_text", to_string(p)}});
        }
        j["modes"] = modes;
    } catch (const DomainError& e) {
        j["family"] = nullptr;
        j["note"] = e.what();
    }
    emit(j, a.out);
    return 0;
}

// ---- scan ------------------------------------------------------------------------

struct ScanArgs {
    std::string seeds, h, step = "1/2", out;
    int order = 2;
};

int cmd_scan(const ScanArgs& a) {
    const auto seeds = parse_seeds(a.seeds);
    std::vector<Rational> hs;
    if (!a.h.empty()) hs = parse_values(a.h, parse_rational(a.step));
    else if (const CatalogCase* cc = case_for_seeds(seeds)) hs = cc->samples;
    else hs = parse_values("3..6", parse_rational(a.step));

    json j = envelope("scan");
    j["seeds"] = seeds_to_json(seeds);
    json rows = json::array();
    std::vector<CurveSample> samples;
    std::map<std::pair<Rational, Rational>, std::vector<Rational>> eta0_of;
    auto sample = [&](const Rational& h) {
        CurveSample s{h, {}};
        json cands = json::array();
        for (const auto& c : find_curve_candidates(seeds, h)) {
            s.gs.push_back(c.g);
            eta0_of[{h, c.g}] = c.eta0;
            json e0 = json::array();
            bool inside = false;
            for (const auto& r : c.eta0) {
                e0.push_back(to_string(r));
                inside = inside || abs(r) < 1;
            }
            json structure = json::array();
            for (const auto& f : c.structure) structure.push_back({{"factor", to_string(f.factor)}, {"multiplicity", f.multiplicity}});
            cands.push_back({{"g", to_string(c.g)}, {"eta0", e0}, {"eta0_inside", inside}, {"structure", structure}});
        }
        samples.push_back(std::move(s));
        return json{{"h", to_string(h)}, {"candidates", cands}};
    };
    for (const auto& h : hs) rows.push_back(sample(h));
    j["samples"] = rows;

    // too few samples for a higher-order map: add midpoints and say so
    auto fitted = fit_curves(samples, a.order);
    json aux = json::array();
    for (int round = 0; round < 3 && fitted.empty() && hs.size() > 1; ++round) {
        std::vector<Rational> hs2;
        for (std::size_t i = 0; i + 1 < hs.size(); ++i) {
            hs2.push_back(hs[i]);
            const Rational mid = (hs[i] + hs[i + 1]) / 2;
            hs2.push_back(mid);
            aux.push_back(sample(mid));
        }
        hs2.push_back(hs.back());
        hs = std::move(hs2);
        fitted = fit_curves(samples, a.order);
    }
    if (!aux.empty()) j["auxiliary_samples"] = aux;
    json fits = json::array();
    for (const auto& f : fitted) {
        json flags = json::array();
        if (!f.linear_fractional()) flags.push_back("non-linear-fractional");
        bool inside = false;
        json matched = json::array();
        for (const auto& h : f.matched_h) {
            matched.push_back(to_string(h));
            for (const auto& r : eta0_of[{h, f.map(h)}]) inside = inside || abs(r) < 1;
        }
        if (inside) flags.push_back("eta0 inside (-1,1)");
        fits.push_back({{"g_of_h", f.map.to_string()}, {"order", f.map.order()}, {"linear_fractional", f.linear_fractional()},
                        {"matched_h", matched}, {"flags", flags}});
    }
    j["fits"] = fits;
    emit(j, a.out);
    return 0;
}

// ---- heun-params ---------------------------------------------------------------------

struct HeunArgs {
    std::string id, h = "default", n = "0..5", out;
};

int cmd_heun(const HeunArgs& a) {
    const CatalogCase& cc = find_case(a.id);
    const Rational h = resolve_h(cc, a.h);
    require_admissible(cc, h);
    const ConfluentFamily fam = make_family(cc, h);
    json j = envelope("heun-params");
    j["caseId"] = cc.id;
    j["h"] = to_string(h);
    j["eta0"] = to_string(fam.eta0);
    json series = json::array();
    for (long n : parse_indices(a.n)) {
        const HeunParams hp = to_heun(fam, n);
        json r = to_json(hp);
        r["n"] = n;
        r["apparent"] = apparency_check(hp);
        series.push_back(r);
    }
    j["series"] = series;
    if (cc.group != Group::None) j["expected_q_r"] = to_string(expected_qr(cc.group, fam.base.gbar, fam.base.hbar));
    emit(j, a.out);
    return 0;
}

// ---- verify ---------------------------------------------------------------------------

struct VerifyArgs {
    std::string id = "all", h = "default", n, out, csv;
    bool limit = false;
    std::string hmag = "1e6";
    double tol = 1e-8, limit_tol = 1e-4;
};

class Checks {
public:
    void add(const std::string& id, const Rational& h, const std::string& check, std::optional<long> n, bool pass, json detail = {}) {
        json r = {{"case", id}, {"h", to_string(h)}, {"check", check}, {"pass", pass}};
        if (n) r["n"] = *n;
        if (!detail.is_null()) r["detail"] = std::move(detail);
        failed_ += pass ? 0 : 1;
        records_.push_back(std::move(r));
    }
    // a thrown library error becomes a failed record
    template <class F>
    void run(const std::string& id, const Rational& h, const std::string& check, std::optional<long> n, F&& f) {
        try {
            f();
        } catch (const std::exception& e) {
            add(id, h, check, n, false, {{"error", e.what()}});
        }
    }
    [[nodiscard]] int failed() const { return failed_; }
    [[nodiscard]] const json& records() const { return records_; }

private:
    json records_ = json::array();
    int failed_ = 0;
};

bool four_point(const ConfluentFamily& fam) { return fam.extra_simple_roots.empty(); }

// strict: a negative n the case lacks is an error rather than skipped
void verify_structure(Checks& ck, const CatalogCase& cc, const Rational& h, const std::vector<long>& ns, double tol, bool strict,
                      std::string& csv) {
    const ConfluentFamily fam = make_family(cc, h);
    const bool closed = has_closed_form(cc.id);
    long n_max = -1;
    for (long n : ns) {
        if (n < 0) continue;
        n_max = std::max(n_max, n);
        ck.run(cc.id, h, "ode_residual", n, [&] {
            const PolyODE ode = ode_for_P(fam, n);
            bool ok = residual(ode, family_mode(fam, n)).is_zero();
            if (cc.group != Group::None) ok = ok && ode == ode_for_P_closed(fam, n) && ode_for_y(fam, n) == ode_for_y_closed(fam, n);
            if (closed) ok = ok && ode == closed_form_ode(cc.id, h, n);
            ck.add(cc.id, h, "ode_residual", n, ok);
        });
    }
    if (n_max >= 0 && four_point(fam)) {
        ck.run(cc.id, h, "heun", std::nullopt, [&] {
            std::optional<Rational> qr;
            for (long n : ns) {
                if (n < 0) continue;
                const HeunParams hp = to_heun(fam, n);
                bool ok = hp.epsilon == -4 && hp.gamma + hp.delta == hp.alpha + hp.beta + 5 && apparency_check(hp);
                if (!qr) qr = hp.q_r;
                ok = ok && hp.q_r == *qr;
                if (cc.group != Group::None) ok = ok && hp.q_r == expected_qr(cc.group, fam.base.gbar, fam.base.hbar);
                json d = to_json(hp);
                ck.add(cc.id, h, "heun", n, ok, d);
            }
        });
    }
    for (long n : ns) {
        if (n >= 0) continue;
        const bool known = std::find(cc.extra_modes.begin(), cc.extra_modes.end(), n) != cc.extra_modes.end();
        if (!known && !strict) continue;
        ck.run(cc.id, h, "additional_mode", n, [&] {
            if (!known)
                throw std::invalid_argument(cc.id + " has no additional mode at n = " + std::to_string(n));
            const auto k = polynomial_kernel(ode_for_P(fam, n), fam.base.ell + 8);
            bool ok = k.size() == 1 && eigen_energy(n, fam.base.params) == extra_mode_energy(n, fam.base.params);
            if (ok && closed) ok = proportionality(k.front(), closed_form_extra(cc.id, h, n)).has_value();
            ck.add(cc.id, h, "additional_mode", n, ok, {{"P", k.empty() ? std::string("-") : to_string(k.front())}});
        });
    }
    if (closed && n_max >= 0)
        ck.run(cc.id, h, "closed_form", std::nullopt, [&] {
            const CrossCheck x = closed_form_crosscheck(cc.id, h, n_max);
            ck.add(cc.id, h, "closed_form", std::nullopt, x.match, {{"constant", to_string(x.constant)}});
        });
    if (!cc.orthogonal) return;
    std::vector<long> idx;
    for (long n : ns)
        if (n >= 0 || std::find(cc.extra_modes.begin(), cc.extra_modes.end(), n) != cc.extra_modes.end()) idx.push_back(n);
    if (idx.size() < 2)
        for (long n = 0; n <= 3; ++n)
            if (std::find(idx.begin(), idx.end(), n) == idx.end()) idx.push_back(n);
    std::sort(idx.begin(), idx.end());
    ck.run(cc.id, h, "orthonormality", std::nullopt, [&] {
        const OrthReport r = orthonormality_suite(fam, idx, product_norm_model(fam));
        bool ok = r.max_offdiag_rel < tol && r.doubling_change < 1e-10;
        for (double e : r.diag_rel_err) ok = ok && e < tol;
        ck.add(cc.id, h, "orthonormality", std::nullopt, ok, to_json(r));
        csv += to_csv(r, csv.empty());
    });
}

void verify_limit(Checks& ck, const CatalogCase& cc, const Rational& hmag, const std::vector<long>& ns, double tol) {
    if (!has_closed_form(cc.id)) return;
    const Rational h = limit_scaling(cc.group, hmag).first;
    for (long n : ns) {
        ck.run(cc.id, h, "limit", n, [&] {
            if (n < 0) {
                if (cc.id != "IVa" || (n != -3 && n != -2)) return;
                const LimitCheck c = laguerre_extra_check(hmag, n);
                ck.add(cc.id, h, "limit", n, c.rel_err < tol, to_json(c));
                return;
            }
            const LimitCheck c = laguerre_limit_check(cc.id, hmag, n);
            const double spread = limit_prefactor_spread(cc.id, hmag, n);
            json d = to_json(c);
            d["prefactor_spread"] = spread;
            ck.add(cc.id, h, "limit", n, c.rel_err < tol && spread < 1e-3, d);
            // O(1/h): one decade in |h| should cut the shape error about tenfold
            const LimitCheck coarse = laguerre_limit_check(cc.id, hmag / 10, n);
            const double ratio = c.shape_err / coarse.shape_err;
            ck.add(cc.id, h, "limit_scaling", n, ratio >= 0.05 && ratio <= 0.2, {{"ratio", ratio}});
        });
    }
}

int cmd_verify(const VerifyArgs& a) {
    std::vector<const CatalogCase*> cases;
    if (a.id == "all")
        for (const auto& cc : catalog()) cases.push_back(&cc);
    else
        cases.push_back(&find_case(a.id));
    const std::string n_text = a.n.empty() ? (a.limit ? "0..3" : "0..5") : a.n;
    const auto ns = parse_indices(n_text);
    const bool strict = a.id != "all" && n_text.find("..") == std::string::npos;
    Checks ck;
    std::string csv;
    if (a.limit) {
        const Rational hmag = parse_rational(a.hmag);
        for (const auto* cc : cases) verify_limit(ck, *cc, hmag, ns, a.limit_tol);
    } else {
        for (const auto* cc : cases) {
            const std::vector<Rational> hs = a.h == "default" ? std::vector<Rational>{cc->default_h()} : parse_values(a.h, Rational(1, 2));
            for (const auto& h : hs) {
                const RangeReport rr = range_check(*cc, h);
                if (!rr.admissible && cc->orthogonal) {
                    ck.add(cc->id, h, "range", std::nullopt, false, {{"reasons", rr.reasons}});
                    continue;
                }
                ck.run(cc->id, h, "construct", std::nullopt, [&] { verify_structure(ck, *cc, h, ns, a.tol, strict, csv); });
            }
        }
    }
    json j = envelope("verify");
    j["checks"] = ck.records();
    j["summary"] = {{"total", ck.records().size()}, {"failed", ck.failed()}, {"pass", ck.failed() == 0}};
    emit(j, a.out);
    if (!a.csv.empty()) {
        std::ofstream os(a.csv);
        os << csv;
    }
    std::cerr << "verify: " << ck.records().size() - static_cast<std::size_t>(ck.failed()) << "/" << ck.records().size()
              << " checks passed\n";
    return ck.failed() == 0 ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Confluent multi-indexed Jacobi polynomials"};
    app.set_help_flag("--help", "Print this help message and exit");
    app.require_subcommand(1);
    int nodes = 0;

    ConstructArgs ca;
    auto* construct = app.add_subcommand("construct", "Build D, w, q, eta0 and P_n");
    construct->add_option("--case", ca.id, "Catalog case id");
    construct->add_option("--seeds", ca.seeds, "Seed list such as I2,III1");
    construct->add_option("--g", ca.g, "g as p/q (defaults to the case curve)");
    construct->add_option("--h", ca.h, "h as p/q, or 'default'");
    construct->add_option("--n", ca.n, "Mode range a..b or list");
    construct->add_option("-o,--out", ca.out, "Output file");

    ScanArgs sa;
    auto* scan = app.add_subcommand("scan", "Search rational g where D gets a multiple zero, then fit g(h)");
    scan->add_option("--seeds", sa.seeds, "Seed list")->required();
    scan->add_option("--h", sa.h, "h values a..b or list (defaults to the case samples)");
    scan->add_option("--step", sa.step, "Step for a..b ranges");
    scan->add_option("--order", sa.order, "Largest fitted map order");
    scan->add_option("-o,--out", sa.out, "Output file");

    HeunArgs ha;
    auto* heun = app.add_subcommand("heun-params", "Heun parameters of a family");
    heun->add_option("--case", ha.id, "Catalog case id")->required();
    heun->add_option("--h", ha.h, "h as p/q, or 'default'");
    heun->add_option("--n", ha.n, "Mode range");
    heun->add_option("-o,--out", ha.out, "Output file");

    VerifyArgs va;
    auto* verify = app.add_subcommand("verify", "Run the verification checks; nonzero exit if any fails");
    verify->add_option("--case", va.id, "Case id or 'all'");
    verify->add_option("--h", va.h, "'default', a value, a list or a..b");
    verify->add_option("--n", va.n, "Mode range, may include additional modes (default 0..5, 0..3 with --limit)");
    verify->add_flag("--limit", va.limit, "Laguerre limit checks instead of the structural suite");
    verify->add_option("--hmag", va.hmag, "|h| for the limit checks");
    verify->add_option("--tol", va.tol, "Orthonormality tolerance");
    verify->add_option("--limit-tol", va.limit_tol, "Limit tolerance");
    verify->add_option("--nodes", nodes, "Quadrature nodes (overrides MIOP_NODES)");
    verify->add_option("--csv", va.csv, "Write the Gram report as CSV");
    verify->add_option("-o,--out", va.out, "Output file");

    CLI11_PARSE(app, argc, argv);
    if (nodes > 0) setenv("MIOP_NODES", std::to_string(nodes).c_str(), 1);

    try {
        // unknown case ids fail before any computation
        for (const std::string* id : {&ca.id, &ha.id})
            if (!id->empty()) find_case(*id);
        if (va.id != "all") find_case(va.id);
        if (*construct) return cmd_construct(ca);
        if (*scan) return cmd_scan(sa);
        if (*heun) return cmd_heun(ha);
        return cmd_verify(va);
    } catch (const Inadmissible& e) {
        std::cerr << "miop: inadmissible h: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "miop: " << e.what() << '\n';
        return 1;
    }
}
