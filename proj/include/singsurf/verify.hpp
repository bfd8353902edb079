#pragma once

#include <cstdint>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "singsurf/corpus.hpp"
#include "singsurf/report.hpp"

namespace singsurf {

struct CheckResult {
    std::string name;
    bool pass;
    std::string detail;  // counterexample or measurement, empty when passing
};

struct SuiteResult {
    std::string suite;
    std::vector<CheckResult> checks;
    bool pass() const {
        for (const auto& c : checks)
            if (!c.pass) return false;
        return true;
    }
    ordered_json failures_json() const {
        ordered_json arr = ordered_json::array();
        for (const auto& c : checks)
            if (!c.pass) {
                ordered_json j;
                j["check"] = c.name;
                j["detail"] = c.detail;
                arr.push_back(j);
            }
        return arr;
    }
};

struct VerifyOptions {
    int random_n = -1;  // -1: the suite's default corpus size
    std::uint64_t seed = 1;
    bool corrupt_delta2 = false;  // debug hook: mis-sign one Delta_2 term
};

namespace corpus_detail {

/// Stratified random coefficient tables. Generic germs never sit on the
/// ridge strata, so those are engineered explicitly: the parabolic
/// direction theta0 has rational tangent and b3 (resp. b4) is solved to
/// put Delta_1 (resp. Delta_2) at zero there.
inline NormalFormCoeffs<Rat> random_stratified_table(std::mt19937_64& rng, int K = 9) {
    std::uniform_int_distribution<int> stratum_d(0, 9);
    int stratum = stratum_d(rng);
    NormalFormCoeffs<Rat> c(K);
    auto r = [&](int m = 2, bool nz = false) { return rand_rat(rng, m, 2, !nz); };
    // texture: a sprinkling of higher terms
    c.set_a(3, 0, r());
    c.set_a(1, 2, r());
    c.set_a(2, 2, r());
    c.set_a(0, 4, r());
    c.set_a(4, 0, r());
    c.set_b(3, r());
    c.set_b(4, r());
    switch (stratum) {
        case 0:  // generic S1
            c.set_a(2, 0, r(2, true));
            c.set_b(2, r());
            c.set_a(2, 1, r(2, true));
            c.set_a(0, 3, r(2, true));
            break;
        case 1:  // generic B-branch
            c.set_a(2, 0, r(2, true));
            c.set_b(2, r());
            c.set_a(2, 1, r(2, true));
            c.set_a(0, 3, Rat(0));
            c.set_a(1, 3, r());
            c.set_a(0, 5, r());
            break;
        case 2: {  // n = 2 families: S2 / C3 / F4
            c.set_a(2, 0, r(2, true));
            c.set_b(2, r());
            c.set_a(2, 1, Rat(0));
            c.set_a(3, 1, r(2, true));
            int pick = int(rng() % 3);
            c.set_a(0, 3, pick == 0 ? r(2, true) : Rat(0));
            c.set_a(1, 3, pick == 1 ? r(2, true) : Rat(0));
            if (pick == 2) {
                c.set_a(1, 3, Rat(0));
                c.set_a(0, 5, r(2, true));
            }
            break;
        }
        case 3:
        case 4: {  // ridge stratum (Delta_1(theta0) = 0), n = 1
            c.set_a(2, 0, r(2, true));
            c.set_b(2, r());
            Rat a21 = r(2, true);
            c.set_a(2, 1, a21);
            c.set_a(0, 3, stratum == 3 ? r(2, true) : Rat(0));
            if (stratum == 4) c.set_a(0, 5, r());
            Rat t0 = a21 * c.b(2) / (Rat(2) * c.a(2, 0));
            c.set_b(3, Rat(2) * c.a(3, 0) * t0 / a21);
            break;
        }
        case 5: {  // higher-order ridge (Delta_1 = Delta_2 = 0 at theta0), n = 1
            c.set_a(2, 0, r(2, true));
            c.set_b(2, r());
            Rat a21 = r(2, true);
            c.set_a(2, 1, a21);
            c.set_a(0, 3, r(2, true));
            Rat t0 = a21 * c.b(2) / (Rat(2) * c.a(2, 0));
            c.set_b(3, Rat(2) * c.a(3, 0) * t0 / a21);
            c.set_b(4, (Rat(2) * c.a(4, 0) * t0 + Rat(12) * a21 * t0 * t0) / a21);
            break;
        }
        case 6: {  // principal-normal strata: a03 = 0, 3b row
            c.set_a(2, 0, r(2, true));
            c.set_b(2, r());
            c.set_a(2, 1, r(2, true));
            c.set_a(0, 3, Rat(0));
            c.set_a(0, 5, r());
            break;
        }
        case 7: {  // principal-normal 4b row: a20 a04 = 3 a12^2
            c.set_a(2, 0, r(2, true));
            c.set_b(2, r());
            c.set_a(2, 1, r(2, true));
            c.set_a(0, 3, Rat(0));
            Rat a12 = r();
            c.set_a(1, 2, a12);
            c.set_a(0, 4, Rat(3) * a12 * a12 / c.a(2, 0));
            c.set_a(0, 5, r());
            break;
        }
        case 8:  // inflection germ
            c.set_a(2, 0, Rat(0));
            c.set_b(2, r(2, true));
            c.set_a(2, 1, r(2, true));
            c.set_a(0, 3, r(2, true));
            break;
        default: {  // n = 2 ridge stratum
            c.set_a(2, 0, r(2, true));
            c.set_b(2, r());
            c.set_a(2, 1, Rat(0));
            Rat a31 = r(2, true);
            c.set_a(3, 1, a31);
            c.set_a(0, 3, r(2, true));
            Rat t0 = a31 * c.b(2) / (Rat(6) * c.a(2, 0));
            c.set_b(3, Rat(6) * c.a(3, 0) * t0 / a31);
            break;
        }
    }
    return c;
}

/// Random Monge-form table with a guaranteed-smooth parabolic set.
inline MongeForm<Rat> random_monge(std::mt19937_64& rng, int K = 7) {
    MongeForm<Rat> m(K);
    m.k2 = rand_rat(rng, 2, 2, false);
    bool a30_zero = rng() % 2 == 0;
    Rat a21 = rand_rat(rng, 2, 2, false);
    m.a.set_coeff(2, 1, a21);
    if (!a30_zero) m.a.set_coeff(3, 0, rand_rat(rng, 2, 2, false));
    Rat a40 = rand_rat(rng, 2, 2);
    if (is_zero(Rat(2) * a21 * a21 - a40 * m.k2)) a40 += Rat(1);
    m.a.set_coeff(4, 0, a40);
    m.a.set_coeff(1, 2, rand_rat(rng, 2, 2));
    m.a.set_coeff(0, 3, rand_rat(rng, 2, 2));
    m.a.set_coeff(3, 1, rand_rat(rng, 2, 2));
    m.a.set_coeff(0, 4, rand_rat(rng, 2, 2));
    m.a.set_coeff(5, 0, rand_rat(rng, 2, 2));
    return m;
}

template <class F>
RidgeOrder hooked_ridge_order(const NormalFormCoeffs<F>& c, int n, const ThetaDirection<F>& th,
                              bool corrupt) {
    auto d = deltas(c, n, th);
    F d2 = d.d2.scaled;
    if (corrupt) d2 = d2 - F(24) * c.a(2, 1) * th.s * th.s;  // flips the 12 a21 sin^2 term
    if (!is_zero(d.d1.scaled)) return RidgeOrder::not_ridge;
    if (!is_zero(d2)) return RidgeOrder::first_order;
    return RidgeOrder::higher_order;
}

template <class F>
HeightClass hooked_geometric(const NormalFormCoeffs<F>& c, const AType& t,
                             const ThetaDirection<F>& th, bool corrupt) {
    if (!corrupt) return classify_height_geometric(c, t, th);
    if (th.is_pi_half()) return classify_height_geometric(c, t, th);
    HeightClass r;
    r.route = HeightRoute::geometric;
    if (point_type(c, t.blowup_n, th) != PointType::parabolic) {
        r.atype = HType::A1;
        r.versal_H = r.versal_Hext = true;
        r.clause = "1a";
        return r;
    }
    switch (hooked_ridge_order(c, t.blowup_n, th, corrupt)) {
        case RidgeOrder::not_ridge:
            r.atype = HType::A2;
            r.versal_H = r.versal_Hext = true;
            r.clause = "1b";
            break;
        case RidgeOrder::first_order:
            r.atype = HType::A3;
            r.versal_H = r.versal_Hext = !is_zero(c.a(2, 0));
            r.clause = "1c";
            break;
        default:
            r.atype = HType::A4plus;
            r.clause = "1d";
            break;
    }
    return r;
}

inline std::string serialize_table(const NormalFormCoeffs<Rat>& c) {
    return render_germ_document_json(coeffs_to_document(c)).dump();
}

}  // namespace corpus_detail

/// --- suite: mond-table -------------------------------------------------

inline SuiteResult suite_mond_table(const VerifyOptions& opt) {
    SuiteResult res{"mond-table", {}};
    int n_transforms = opt.random_n < 0 ? 200 : opt.random_n;
    std::mt19937_64 rng(opt.seed);
    struct FormCase {
        Family fam;
        int k, sign;
        std::string label;
        int order;
    };
    std::vector<FormCase> cases;
    auto label_of = [](Family f, int k, int sign) {
        std::string s = f == Family::S ? "S" : f == Family::B ? "B" : f == Family::C ? "C" : "F";
        s += std::to_string(f == Family::F ? 4 : k);
        bool has_sign =
            (f == Family::S && k % 2 == 1) || f == Family::B || (f == Family::C && k % 2 == 1);
        if (has_sign) s += sign > 0 ? "+" : "-";
        return s;
    };
    for (int k = 1; k <= 6; ++k)
        for (int sg : (k % 2 == 1 ? std::vector<int>{1, -1} : std::vector<int>{1}))
            cases.push_back({Family::S, k, sg, label_of(Family::S, k, sg), std::max(k + 2, 5)});
    for (int k = 2; k <= 6; ++k)
        for (int sg : {1, -1})
            cases.push_back({Family::B, k, sg, label_of(Family::B, k, sg), 2 * k + 1});
    for (int k = 3; k <= 6; ++k)
        for (int sg : (k % 2 == 1 ? std::vector<int>{1, -1} : std::vector<int>{1}))
            cases.push_back({Family::C, k, sg, label_of(Family::C, k, sg), std::max(k + 1, 5)});
    cases.push_back({Family::F, 4, 1, "F4", 5});

    ReduceOptions ropt;
    ropt.track_changes = false;
    for (const auto& cs : cases) {
        auto base = mond_normal_form(cs.fam, cs.k, cs.sign, cs.order);
        auto out = reduce(base, ropt);
        auto* r0 = std::get_if<ReduceResult>(&out);
        if (!r0) {
            res.checks.push_back({"normal form " + cs.label, false, "reduce failed"});
            continue;
        }
        AType t0 = classify(r0->coeffs);
        if (t0.label() != cs.label) {
            res.checks.push_back(
                {"normal form " + cs.label, false, "classified as " + t0.label()});
            continue;
        }
        bool ok = true;
        std::string detail;
        for (int trial = 0; trial < n_transforms && ok; ++trial) {
            auto [su, sv] = random_source_diffeo(rng, cs.order);
            auto rot = random_rotation(rng);
            auto g = transform_germ(base, rot, su, sv);
            auto out1 = reduce(g, ropt);
            auto* r1 = std::get_if<ReduceResult>(&out1);
            AType t1 = r1 ? classify(r1->coeffs) : AType{};
            if (!r1 || !(t1 == t0)) {
                ok = false;
                detail = "transform " + std::to_string(trial) + " classified as " +
                         (r1 ? t1.label() : std::string("reduce-error"));
            }
        }
        res.checks.push_back({"invariance " + cs.label + " x" + std::to_string(n_transforms),
                              ok, detail});
    }
    return res;
}

/// --- suite: blowup-limits ----------------------------------------------

/// Per-germ limit check shared by the corpus suite and the single-germ
/// CLI entry point.
template <class F>
CheckResult check_limits_germ(const std::string& name, const NormalFormCoeffs<F>& c) {
    AType t = classify(c);
    if (!t.in_family())
        return {"limits " + name, false, "germ is out of family: " + t.reason};
    int n = t.blowup_n;
    auto g = c.germ();
    const double thetas[8] = {0.0, 0.15, -0.25, 0.4, -0.55, 0.7, -0.9, 1.05};
    double worst = 0, worst_slope = 0;
    for (double th : thetas) {
        auto td = ThetaDirection<F>::from_radians(th);
        auto nrm = leading_normal(c, n, td);
        auto ny = oracle::blowup_limit(g, n, th, oracle::BlowupQuantity::normal_y);
        auto nz = oracle::blowup_limit(g, n, th, oracle::BlowupQuantity::normal_z);
        double sgn_fix = (ny.value * nrm.unit[1] + nz.value * nrm.unit[2]) >= 0 ? 1.0 : -1.0;
        worst = std::max(worst, std::abs(sgn_fix * ny.value - nrm.unit[1]));
        worst = std::max(worst, std::abs(sgn_fix * nz.value - nrm.unit[2]));
        auto lk1 = oracle::blowup_limit(g, n, th, oracle::BlowupQuantity::k10);
        worst = std::max(worst, std::abs(lk1.value - k10(c, n, td).value));
        auto lk2 = oracle::blowup_limit(g, n, th, oracle::BlowupQuantity::k20);
        worst = std::max(worst, std::abs(lk2.value - k20(c, n, td)));
        auto lg = oracle::blowup_limit(g, n, th, oracle::BlowupQuantity::gauss_scaled);
        worst = std::max(worst, std::abs(lg.value - gauss_scaled(c, n, td)));
        double slope = oracle::kappa2_ray_slope(g, n, th);
        worst_slope = std::max(worst_slope, std::abs(slope + 2.0 * n + 2.0));
    }
    return {"limits " + name + " (n=" + std::to_string(n) + ")",
            worst <= 1e-4 && worst_slope <= 0.05,
            "max residual " + std::to_string(worst) + ", slope dev " +
                std::to_string(worst_slope)};
}

inline SuiteResult suite_blowup_limits(const VerifyOptions& opt) {
    SuiteResult res{"blowup-limits", {}};
    int n_random = opt.random_n < 0 ? 10 : opt.random_n;
    std::mt19937_64 rng(opt.seed);
    std::vector<std::pair<std::string, NormalFormCoeffs<Rat>>> germs;
    germs.push_back({"G1", g1_coeffs()});
    germs.push_back({"G2", g2_coeffs()});
    // random in-family germs with small coefficients: the dyadic sample
    // ladder sits inside the series' convergence radius only when the
    // higher coefficients stay tame
    while (int(germs.size()) < 2 + n_random) {
        NormalFormCoeffs<Rat> c(9);
        auto r = [&](bool nz = false) { return rand_rat(rng, 1, 2, !nz); };
        c.set_a(2, 0, r(true));
        c.set_b(2, r());
        c.set_b(3, r());
        c.set_b(4, r());
        c.set_a(3, 0, r());
        c.set_a(1, 2, r());
        c.set_a(0, 4, r());
        c.set_a(4, 0, r());
        if (rng() % 2 == 0) {
            c.set_a(2, 1, r(true));
            c.set_a(0, 3, rng() % 2 == 0 ? r(true) : Rat(0));
            c.set_a(0, 5, r());
        } else {
            c.set_a(3, 1, r(true));
            c.set_a(0, 3, r(true));
        }
        AType t = classify(c);
        if (!t.in_family() || t.blowup_n > 2) continue;
        germs.push_back({"random-" + std::to_string(germs.size() - 2), c});
    }
    for (const auto& [name, c] : germs) res.checks.push_back(check_limits_germ(name, c));
    return res;
}

/// --- suite: route-agreement ---------------------------------------------

inline SuiteResult suite_route_agreement(const VerifyOptions& opt) {
    SuiteResult res{"route-agreement", {}};
    int n_germs = opt.random_n < 0 ? 500 : opt.random_n;
    std::mt19937_64 rng(opt.seed);
    int tested = 0, germs_used = 0;
    std::string counterexample;
    bool ok = true;
    while (germs_used < n_germs && ok) {
        auto c = corpus_detail::random_stratified_table(rng);
        AType t = classify(c);
        if (!t.in_family()) continue;
        ++germs_used;
        std::vector<ThetaDirection<Rat>> dirs;
        auto pd = parabolic_thetas(c, t.blowup_n);
        for (const auto& th : pd.thetas)
            if (!th.is_pi_half()) dirs.push_back(th);
        for (int s = 0; s < 8; ++s) dirs.push_back(ThetaDirection<Rat>::from_tan(
            ratio(int(rng() % 9) - 4, 1 + int(rng() % 3))));
        dirs.push_back(ThetaDirection<Rat>::pi_half());
        for (const auto& th : dirs) {
            auto geo = corpus_detail::hooked_geometric(c, t, th, opt.corrupt_delta2);
            auto coef = classify_height(c, Direction3<Rat>::from_theta(c, t.blowup_n, th));
            ++tested;
            if (!(geo == coef)) {
                ok = false;
                counterexample = corpus_detail::serialize_table(c) + " at tan=" +
                                 (th.is_pi_half() ? "pi/2" : to_str(th.s / th.c)) + ": geometric " +
                                 std::string(to_string(geo.atype)) + "/" +
                                 (geo.versal_H ? "versal" : "non-versal") + " vs coefficient " +
                                 to_string(coef.atype) + "/" +
                                 (coef.versal_H ? "versal" : "non-versal");
                break;
            }
        }
    }
    res.checks.push_back({"coefficient == geometric on " + std::to_string(germs_used) +
                              " germs (" + std::to_string(tested) + " directions)",
                          ok, counterexample});
    return res;
}

/// --- suite: ade-agreement ----------------------------------------------

inline SuiteResult suite_ade_agreement(const VerifyOptions& opt) {
    SuiteResult res{"ade-agreement", {}};
    int n_germs = opt.random_n < 0 ? 500 : opt.random_n;
    std::mt19937_64 rng(opt.seed);
    int tested = 0, germs_used = 0;
    bool ok = true;
    std::string counterexample;
    while (germs_used < n_germs && ok) {
        auto c = corpus_detail::random_stratified_table(rng);
        AType t = classify(c);
        if (!t.in_family()) continue;
        ++germs_used;
        std::vector<Direction3<Rat>> dirs;
        auto pd = parabolic_thetas(c, t.blowup_n);
        for (const auto& th : pd.thetas)
            if (!th.is_pi_half()) dirs.push_back(Direction3<Rat>::from_theta(c, t.blowup_n, th));
        dirs.push_back(Direction3<Rat>(Rat(0), Rat(0), Rat(1)));
        dirs.push_back(Direction3<Rat>(Rat(0), rand_rat(rng, 3, 2, false), rand_rat(rng, 3, 2)));
        for (const auto& v : dirs) {
            auto hc = classify_height(c, v);
            auto ade = ade_recognize(height_jet(c, v));
            ++tested;
            if (!ade.matches(hc.atype)) {
                ok = false;
                counterexample = corpus_detail::serialize_table(c) + ": height " +
                                 std::string(to_string(hc.atype)) + " vs splitting " +
                                 to_string(ade);
                break;
            }
        }
    }
    res.checks.push_back({"splitting lemma agrees on " + std::to_string(germs_used) + " germs (" +
                              std::to_string(tested) + " directions)",
                          ok, counterexample});
    return res;
}

/// --- suite: versality ---------------------------------------------------

inline SuiteResult suite_versality(const VerifyOptions& opt) {
    SuiteResult res{"versality", {}};
    int n_germs = opt.random_n < 0 ? 300 : opt.random_n;
    std::mt19937_64 rng(opt.seed);
    int tested = 0, germs_used = 0;
    bool ok = true;
    std::string counterexample;
    while (germs_used < n_germs && ok) {
        auto c = corpus_detail::random_stratified_table(rng);
        AType t = classify(c);
        if (!t.in_family()) continue;
        ++germs_used;
        std::vector<Direction3<Rat>> dirs;
        auto pd = parabolic_thetas(c, t.blowup_n);
        for (const auto& th : pd.thetas)
            if (!th.is_pi_half()) dirs.push_back(Direction3<Rat>::from_theta(c, t.blowup_n, th));
        dirs.push_back(Direction3<Rat>(Rat(0), Rat(0), Rat(1)));
        dirs.push_back(Direction3<Rat>(Rat(0), rand_rat(rng, 3, 2, false), rand_rat(rng, 3, 2)));
        for (const auto& v : dirs) {
            auto hc = classify_height(c, v);
            if (hc.atype != HType::A1 && hc.atype != HType::A2 && hc.atype != HType::A3)
                continue;
            auto vr = versality_matrix_rank(c, v);
            ++tested;
            if (vr.full() != hc.versal_H) {
                ok = false;
                counterexample = corpus_detail::serialize_table(c) + ": " +
                                 std::string(to_string(hc.atype)) + " clause " + hc.clause +
                                 " versal=" + (hc.versal_H ? "yes" : "no") + " but rank " +
                                 std::to_string(vr.rank) + "/" + std::to_string(vr.cols);
                break;
            }
        }
    }
    res.checks.push_back({"versality matrix rank matches the verdict on " +
                              std::to_string(tested) + " instances",
                          ok, counterexample});
    return res;
}

/// --- suite: sigma-branch -------------------------------------------------

inline SuiteResult suite_sigma_branch(const VerifyOptions& opt) {
    SuiteResult res{"sigma-branch", {}};
    int n_germs = opt.random_n < 0 ? 100 : opt.random_n;
    std::mt19937_64 rng(opt.seed);
    // printed expansion coefficients, exact, on random tables
    bool ok = true;
    std::string detail;
    for (int i = 0; i < n_germs && ok; ++i) {
        auto c = corpus_detail::random_stratified_table(rng);
        Jet2Q S = sigma_jet(c);
        Rat a20 = c.a(2, 0), a21 = c.a(2, 1), a03 = c.a(0, 3), a30 = c.a(3, 0),
            a12 = c.a(1, 2), a13 = c.a(1, 3), a04 = c.a(0, 4), b2 = c.b(2);
        bool good = S.coeff(2, 1) == -a20 * a21 / 2 && S.coeff(0, 3) == a20 * a03 / 2 &&
                    S.coeff(4, 0) == a21 * a21 * b2 / 4 &&
                    S.coeff(2, 2) == ratio(-3, 2) * a21 * a21 &&
                    S.coeff(1, 3) ==
                        (a20 * a13 + a30 * a03 - Rat(4) * a21 * a12 - a12 * a03 * b2) / 2 &&
                    S.coeff(0, 4) == (Rat(4) * a20 * a04 + Rat(6) * a21 * a03 -
                                      Rat(12) * a12 * a12 - Rat(3) * a03 * a03 * b2) /
                                         12;
        // boundary expansions for the germ's own chart index
        AType t = classify(c);
        if (good && t.in_family()) {
            int n = t.blowup_n;
            Rat a = c.a(n + 1, 1);
            Rat f = factorial<Rat>(n + 1);
            if (2 * n + 2 <= S.order()) good = good && S.coeff(2 * n + 2, 0) == (a / f) * (a / f) * b2;
            Jet2Q Sv = S.derivative(Jet2Q::Var::v);
            good = good && Sv.coeff(n + 1, 0) == -a20 * a / f;
        }
        if (!good) {
            ok = false;
            detail = corpus_detail::serialize_table(c);
        }
    }
    res.checks.push_back({"printed Sigma expansion reproduced exactly", ok, detail});

    // contact orders on the family fixtures
    auto fixture = [&](Family fam) {
        NormalFormCoeffs<Rat> c(9);
        c.set_a(2, 0, Rat(1));
        c.set_b(2, Rat(1));
        switch (fam) {
            case Family::S:
                c.set_a(0, 3, Rat(6));
                c.set_a(3, 1, Rat(6));
                break;
            case Family::B:
                c.set_a(2, 1, Rat(2));
                c.set_a(0, 5, Rat(120));
                break;
            case Family::C:
                c.set_a(1, 3, Rat(6));
                c.set_a(3, 1, Rat(6));
                break;
            default:
                c.set_a(3, 1, Rat(6));
                c.set_a(0, 5, Rat(120));
                break;
        }
        return c;
    };
    struct WantContact {
        Family fam;
        const char* label;
        int m;
    };
    for (auto [fam, label, m] : {WantContact{Family::S, "S2", 3}, {Family::B, "B2+", 2},
                                 {Family::C, "C3+", 3}, {Family::F, "F4", 3}}) {
        auto c = fixture(fam);
        AType t = classify(c);
        bool good = t.label() == label;
        std::string d;
        if (good) {
            auto br = trace_branch(c, t);
            good = br.contact >= m;
            if (!good) d = "contact " + std::to_string(br.contact);
        } else {
            d = "classified " + t.label();
        }
        res.checks.push_back({std::string("contact order ") + label + " >= " + std::to_string(m),
                              good, d});
    }

    // branch residual vanishes through the guaranteed order (recomputed)
    bool rok = true;
    std::string rdetail;
    int used = 0;
    while (used < 50 && rok) {
        auto c = corpus_detail::random_stratified_table(rng);
        AType t = classify(c);
        if (!t.in_family() || is_zero(c.a(2, 0))) continue;
        ++used;
        auto br = trace_branch(c, t);
        Jet2Q S = sigma_jet(c);
        Jet1Q u1 = Jet1Q::var(S.order());
        Jet1Q resid = S.compose_curve(u1, br.series.truncated(S.order()));
        for (int d = 0; d <= br.guaranteed_order; ++d)
            if (!is_zero(resid.coeff(d))) {
                rok = false;
                rdetail = corpus_detail::serialize_table(c) + " residual at order " +
                          std::to_string(d);
                break;
            }
    }
    res.checks.push_back({"Sigma(u, beta(u)) vanishes through the guaranteed order", rok,
                          rdetail});
    return res;
}

/// --- suite: torsion -------------------------------------------------------

inline SuiteResult suite_torsion(const VerifyOptions& opt) {
    SuiteResult res{"torsion", {}};
    int n_numeric = opt.random_n < 0 ? 100 : opt.random_n;
    std::mt19937_64 rng(opt.seed);

    bool closed_ok = true, numeric_ok = true;
    std::string closed_detail, numeric_detail;
    double worst_numeric = 0;
    int used = 0, numeric_tested = 0, attempts = 0;
    while ((used < n_numeric || numeric_tested < n_numeric) && closed_ok && numeric_ok &&
           attempts < 60 * n_numeric) {
        ++attempts;
        auto c = corpus_detail::random_stratified_table(rng);
        AType t = classify(c);
        if (!t.in_family() || is_zero(c.a(2, 0))) continue;
        ++used;
        auto br = trace_branch(c, t);
        SpaceCurveInvariants<Rat> inv = curve_invariants(c, br);
        // closed forms (a21 read as 0 for n >= 2)
        Rat a20 = c.a(2, 0), b2 = c.b(2), b3 = c.b(3), b4 = c.b(4);
        Rat a30 = c.a(3, 0), a40 = c.a(4, 0);
        Rat a21 = t.blowup_n == 1 ? c.a(2, 1) : Rat(0);
        Rat d = a20 * a20 + b2 * b2;
        Rat tau0 = (a30 * b2 - a20 * b3) / d;
        Rat taup = Rat(-2) * (a30 * b2 - a20 * b3) * (a20 * a30 + b2 * b3) / (d * d) +
                   (a40 * a20 * b2 + Rat(3) * a21 * a21 * b2 * b2 - a20 * a20 * b4) / (a20 * d);
        if (!(inv.tau0 == tau0 && inv.tau0prime == taup)) {
            closed_ok = false;
            closed_detail = corpus_detail::serialize_table(c);
            break;
        }
        if (is_zero(inv.curvature0_sq)) continue;
        if (to_double(inv.curvature0_sq) < 0.01) continue;  // oracle needs curvature away from 0
        Jet1Q beta = br.series.truncated(7);
        Jet1Q tt = Jet1Q::var(7);
        std::array<Jet1Q, 3> L{tt, c.p_jet().compose_curve(tt, beta),
                               c.q_jet().compose_curve(tt, beta)};
        auto est = oracle::torsion_numeric(oracle::curve_of(L));
        if (!est.converged) continue;  // torsion too wild near 0 for the sample window
        ++numeric_tested;
        // relative tolerance above 1, absolute below
        double tol1 = 1e-5 * std::max(1.0, std::abs(to_double(inv.tau0)));
        double tol2 = 1e-5 * std::max(1.0, std::abs(to_double(inv.tau0prime)));
        double e1 = std::abs(est.tau0 - to_double(inv.tau0));
        double e2 = std::abs(est.tau0prime - to_double(inv.tau0prime));
        worst_numeric = std::max({worst_numeric, e1 / tol1 * 1e-5, e2 / tol2 * 1e-5});
        if (e1 > tol1 || e2 > tol2) {
            numeric_ok = false;
            numeric_detail = corpus_detail::serialize_table(c) + " err " + std::to_string(e1) +
                             "/" + std::to_string(e2);
        }
    }
    res.checks.push_back({"closed-form tau(0), tau'(0) match the exact jet Frenet data on " +
                              std::to_string(used) + " branches",
                          closed_ok, closed_detail});
    res.checks.push_back({"numeric torsion within 1e-5 on " + std::to_string(numeric_tested) +
                              " branches (worst " + std::to_string(worst_numeric) + ")",
                          numeric_ok && numeric_tested >= n_numeric,
                          numeric_ok ? "too few numerically testable branches" : numeric_detail});

    // label-level: torsion class == height class along +-b(0)
    bool label_ok = true;
    std::string label_detail;
    int lused = 0;
    while (lused < 200 && label_ok) {
        auto c = corpus_detail::random_stratified_table(rng);
        AType t = classify(c);
        if (!t.in_family() || is_zero(c.a(2, 0))) continue;
        ++lused;
        auto inv = curve_invariants(c, trace_branch(c, t));
        auto tc = classify_by_torsion(inv);
        Direction3<Rat> b0(inv.binormal_scaled[0], inv.binormal_scaled[1],
                           inv.binormal_scaled[2]);
        auto hc = classify_height(c, b0);
        if (to_htype(tc) != hc.atype) {
            label_ok = false;
            label_detail = corpus_detail::serialize_table(c) + ": torsion " +
                           std::string(to_string(tc)) + " vs height " + to_string(hc.atype);
        }
    }
    res.checks.push_back({"torsion dictionary equals the height class along the binormal (" +
                              std::to_string(lused) + " germs)",
                          label_ok, label_detail});
    return res;
}

/// --- suite: regular-surface ----------------------------------------------

inline SuiteResult suite_regular_surface(const VerifyOptions& opt) {
    SuiteResult res{"regular-surface", {}};
    int n_germs = opt.random_n < 0 ? 200 : opt.random_n;
    std::mt19937_64 rng(opt.seed);
    bool label_ok = true, tau_ok = true, numeric_ok = true;
    std::string ldetail, tdetail, ndetail;
    double worst = 0;
    for (int i = 0; i < n_germs && label_ok && tau_ok && numeric_ok; ++i) {
        auto m = corpus_detail::random_monge(rng);
        auto rep = regular_parabolic_check(m);
        auto ade = ade_recognize(m.graph_jet());
        if (!ade.matches(rep.label)) {
            label_ok = false;
            ldetail = "label " + std::string(to_string(rep.label)) + " vs splitting " +
                      to_string(ade);
            break;
        }
        if (!rep.invariants) continue;
        Rat a30 = m.a.coeff(3, 0), a21 = m.a.coeff(2, 1), a40 = m.a.coeff(4, 0);
        if (is_zero(a30)) {
            Rat want = (Rat(8) * a21 * a21 - Rat(3) * a40 * m.k2) *
                       (Rat(3) * a21 * a21 - a40 * m.k2) /
                       (a21 * (Rat(2) * a21 * a21 - a40 * m.k2));
            if (!(rep.invariants->tau0 == Rat(0) && rep.invariants->tau0prime == want)) {
                tau_ok = false;
                tdetail = "printed tau'(0) formula mismatch";
                break;
            }
            if (to_double(rep.invariants->curvature0_sq) >= 0.01) {
                // numeric cross-check of tau'(0) along the branch
                Jet2Q f = m.graph_jet();
                const int N = 5;
                Jet1Q t = Jet1Q::var(N);
                // re-solve the branch numerically from the jet solve result:
                // reuse check via torsion_numeric on the parameterized curve
                // gamma embedded in the report path is not exposed; rebuild:
                Jet2Q fu = f.derivative(Jet2Q::Var::u);
                Jet2Q fv = f.derivative(Jet2Q::Var::v);
                Jet2Q det = fu.derivative(Jet2Q::Var::u).truncated(m.order - 2) *
                                fv.derivative(Jet2Q::Var::v).truncated(m.order - 2) -
                            fu.derivative(Jet2Q::Var::v).truncated(m.order - 2) *
                                fu.derivative(Jet2Q::Var::v).truncated(m.order - 2);
                Jet1Q tt = Jet1Q::var(m.order - 2), gamma(m.order - 2);
                bool solved = true;
                for (int dd = 1; dd <= m.order - 3 && solved; ++dd) {
                    auto residual_at = [&](const Rat& x) {
                        Jet1Q cand = gamma;
                        cand.set_coeff(dd, x);
                        return det.compose_curve(tt, cand).coeff(dd);
                    };
                    Rat r0 = residual_at(Rat(0)), r1 = residual_at(Rat(1));
                    if (is_zero(r1 - r0)) {
                        solved = false;
                        break;
                    }
                    gamma.set_coeff(dd, -r0 / (r1 - r0));
                }
                if (solved) {
                    std::array<Jet1Q, 3> L{tt, gamma, f.truncated(m.order - 2)
                                                          .compose_curve(tt, gamma)};
                    auto est = oracle::torsion_numeric(oracle::curve_of(L));
                    if (est.converged) {
                        double tol = 1e-5 * std::max(1.0, std::abs(to_double(want)));
                        double err = std::abs(est.tau0prime - to_double(want));
                        worst = std::max(worst, err / tol * 1e-5);
                        if (err > tol) {
                            numeric_ok = false;
                            ndetail = "numeric tau'(0) err " + std::to_string(err);
                        }
                    }
                }
            }
        }
    }
    res.checks.push_back(
        {"Monge labels equal the splitting-lemma oracle on " + std::to_string(n_germs) + " surfaces",
         label_ok, ldetail});
    res.checks.push_back({"printed tau'(0) formula reproduced exactly", tau_ok, tdetail});
    res.checks.push_back({"numeric tau'(0) within 1e-5 (worst " + std::to_string(worst) + ")",
                          numeric_ok, ndetail});
    return res;
}

/// --- suite: dual-labels -----------------------------------------------

inline SuiteResult suite_dual_labels(const VerifyOptions&) {
    SuiteResult res{"dual-labels", {}};
    auto g2 = g2_coeffs();
    AType t2 = classify(g2);
    auto d0 = dual_label(g2, t2, ThetaDirection<Rat>::from_tan(Rat(0)));
    res.checks.push_back({"G2 at theta=0 -> swallowtail",
                          d0.label == DualSingularity::swallowtail,
                          std::string(to_string(d0.label))});
    auto g2b = g2_coeffs();
    g2b.set_b(3, Rat(1));
    auto db = dual_label(g2b, classify(g2b), ThetaDirection<Rat>::from_tan(Rat(0)));
    res.checks.push_back({"G2 with b3=1 at theta=0 -> cuspidal_edge",
                          db.label == DualSingularity::cuspidal_edge,
                          std::string(to_string(db.label))});
    auto g1 = g1_coeffs();
    auto d1 = dual_label(g1, classify(g1), ThetaDirection<Rat>::from_tan(Rat(1)));
    res.checks.push_back({"G1 at theta=pi/4 -> unresolved (sub-parabolic)",
                          d1.label == DualSingularity::unresolved && d1.basis == "sub-parabolic",
                          std::string(to_string(d1.label)) + "/" + d1.basis});
    return res;
}

/// --- suite: roundtrip ----------------------------------------------------

inline SuiteResult suite_roundtrip(const VerifyOptions& opt) {
    SuiteResult res{"roundtrip", {}};
    std::mt19937_64 rng(opt.seed);
    int n_docs = opt.random_n < 0 ? 100 : opt.random_n;
    bool ok = true;
    std::string detail;
    for (int i = 0; i < n_docs && ok; ++i) {
        GermDocument doc;
        if (rng() % 2 == 0) {
            doc.mode = GermDocument::Mode::raw;
            doc.order = 4 + int(rng() % 6);
            std::set<std::pair<int, int>> used[3];
            for (int c = 0; c < 3; ++c)
                for (int k = 0; k < 5; ++k) {
                    int d = 1 + int(rng() % doc.order);
                    int j = int(rng() % (d + 1));
                    if (!used[c].insert({d - j, j}).second) continue;
                    doc.components[c].push_back({d - j, j, rand_rat(rng, 50, 20)});
                }
        } else {
            auto c = corpus_detail::random_stratified_table(rng);
            doc = coeffs_to_document(c);
        }
        if (rng() % 3 == 0) doc.label_hint = "hint-" + std::to_string(rng() % 100);
        GermDocument back = parse_germ_document(render_germ_document(doc));
        if (!(back == doc)) {
            ok = false;
            detail = render_germ_document_json(doc).dump();
        }
    }
    res.checks.push_back({"parse(render(doc)) == doc for random documents", ok, detail});

    // deterministic reports: byte-identical across repeated runs
    auto render_once = [&]() {
        auto c = g2_coeffs();
        AnalyzeOptions aopt;
        aopt.theta_degrees = {30.0};
        aopt.directions = {{Rat(0), Rat(1)}};
        return analyze_report(c, aopt).dump(2);
    };
    std::string r1 = render_once(), r2 = render_once();
    res.checks.push_back({"repeated analyze reports are byte-identical", r1 == r2, ""});
    bool reparse_ok = ordered_json::parse(r1) == ordered_json::parse(r2);
    res.checks.push_back({"report JSON reparses to the same document", reparse_ok, ""});
    return res;
}

/// Dispatch by suite name.
inline SuiteResult run_suite(const std::string& name, const VerifyOptions& opt) {
    if (name == "mond-table") return suite_mond_table(opt);
    if (name == "blowup-limits") return suite_blowup_limits(opt);
    if (name == "route-agreement") return suite_route_agreement(opt);
    if (name == "ade-agreement") return suite_ade_agreement(opt);
    if (name == "versality") return suite_versality(opt);
    if (name == "sigma-branch") return suite_sigma_branch(opt);
    if (name == "torsion") return suite_torsion(opt);
    if (name == "regular-surface") return suite_regular_surface(opt);
    if (name == "dual-labels") return suite_dual_labels(opt);
    if (name == "roundtrip") return suite_roundtrip(opt);
    throw std::invalid_argument("unknown suite name: " + name);
}

inline std::vector<std::string> suite_names() {
    return {"mond-table",  "blowup-limits", "route-agreement", "ade-agreement", "versality",
            "sigma-branch", "torsion",       "regular-surface", "dual-labels",   "roundtrip"};
}

}  // namespace singsurf
