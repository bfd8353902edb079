#pragma once

#include "singsurf/io.hpp"
#include "singsurf/oracle.hpp"
#include "singsurf/parabolic.hpp"

namespace singsurf {

struct AnalyzeOptions {
    bool theta_auto = true;                         // analyze the parabolic directions
    std::vector<double> theta_degrees;              // plus explicit angles
    std::vector<std::pair<Rat, Rat>> directions;    // plus explicit (y, z) directions
    bool with_oracle = true;                        // append numeric residuals
    int branch_order = -1;                          // -1: as far as the jet allows
};

namespace detail {

template <class F>
ordered_json theta_json(const ThetaDirection<F>& th) {
    ordered_json j;
    if (th.is_pi_half()) {
        j["pi_half"] = true;
    } else {
        j["pi_half"] = false;
        j["tan_exact"] = to_str(th.s / th.c);
    }
    j["theta_deg"] = th.radians() * 180.0 / M_PI;
    return j;
}

template <class F>
ordered_json over_singularity_json(const NormalFormCoeffs<F>& c, int n,
                                   const ThetaDirection<F>& th) {
    ordered_json j;
    auto r = over_singularity(c, n, th);
    j["k10"] = exact_value_json(r.k10_val.scaled, r.k10_val.value);
    if (!r.type.has_value()) {
        j["undefined_at_pi_half"] = true;
        return j;
    }
    j["point_type"] = to_string(*r.type);
    j["ridge"] = to_string(*r.ridge);
    j["sub_parabolic"] = *r.sub_parabolic;
    ordered_json ds = ordered_json::array();
    ds.push_back(exact_value_json(r.delta->d1.scaled, r.delta->d1.value));
    ds.push_back(exact_value_json(r.delta->d2.scaled, r.delta->d2.value));
    ds.push_back(exact_value_json(r.delta->d3.scaled, r.delta->d3.value));
    j["deltas"] = ds;
    j["k20"] = *r.k20_val;
    return j;
}

template <class F>
ordered_json direction_block(const NormalFormCoeffs<F>& c, const AType& t,
                             const ThetaDirection<F>& th) {
    ordered_json j;
    j["theta"] = theta_json(th);
    int n = t.blowup_n;
    j["over_singularity"] = over_singularity_json(c, n, th);
    auto ln = leading_normal(c, n, th);
    j["normal_limit"] = ordered_json::array({ln.unit[0], ln.unit[1], ln.unit[2]});
    auto geo = classify_height_geometric(c, t, th);
    j["height_geometric"] = height_json(geo);
    Direction3<F> dir = Direction3<F>::from_theta(c, n, th);
    auto coef = classify_height(c, dir);
    j["height_coefficient"] = height_json(coef);
    j["routes_agree"] = geo == coef;
    if (coef.atype == HType::A1 || coef.atype == HType::A2 || coef.atype == HType::A3) {
        auto vr = versality_matrix_rank(c, dir);
        ordered_json v;
        v["rank"] = vr.rank;
        v["cols"] = vr.cols;
        v["full"] = vr.full();
        j["versality_matrix"] = v;
    }
    auto ade = ade_recognize(height_jet(c, dir));
    j["ade_oracle"] = to_string(ade);
    if (!is_zero(c.a(2, 0))) {
        auto dl = dual_label(c, t, th);
        ordered_json d;
        d["label"] = to_string(dl.label);
        d["basis"] = dl.basis;
        j["dual"] = d;
    }
    return j;
}

}  // namespace detail

/// Full analysis of a normal-form germ: classification, per-direction
/// blow-up geometry and height types, the parabolic branch with its
/// torsion, dual labels, and numeric cross-checks.
template <class F>
ordered_json analyze_report(const NormalFormCoeffs<F>& c, const AnalyzeOptions& opt = {}) {
    ordered_json rep;
    rep["order"] = c.order();
    rep["singular_point"] = to_string(singular_point_class(c));
    AType t = classify(c);
    rep["atype"] = atype_json(t);
    {
        ordered_json nf;
        ordered_json a = ordered_json::array();
        for (int d = 2; d <= c.order(); ++d)
            for (int j = 0; j <= d; ++j) {
                int i = d - j;
                if (d == 2 && !(i == 2 && j == 0)) continue;
                if (!is_zero(c.a(i, j)))
                    a.push_back(ordered_json::array({i, j, to_str(c.a(i, j))}));
            }
        ordered_json b = ordered_json::array();
        for (int i = 2; i <= c.order(); ++i)
            if (!is_zero(c.b(i))) b.push_back(ordered_json::array({i, to_str(c.b(i))}));
        nf["a"] = a;
        nf["b"] = b;
        rep["normal_form"] = nf;
    }
    if (!t.in_family()) return rep;

    int n = t.blowup_n;
    auto pd = parabolic_thetas(c, n);
    {
        ordered_json pj;
        pj["all_directions"] = pd.all_directions;
        pj["pi_half_case"] = pd.pi_half_case;
        ordered_json list = ordered_json::array();
        for (const auto& th : pd.thetas) list.push_back(detail::theta_json(th));
        pj["thetas"] = list;
        rep["parabolic"] = pj;
    }

    std::vector<ThetaDirection<F>> dirs;
    if (opt.theta_auto)
        for (const auto& th : pd.thetas) dirs.push_back(th);
    for (double deg : opt.theta_degrees)
        dirs.push_back(ThetaDirection<F>::from_radians(deg * M_PI / 180.0));
    ordered_json blocks = ordered_json::array();
    for (const auto& th : dirs) blocks.push_back(detail::direction_block(c, t, th));
    rep["directions"] = blocks;

    ordered_json dblocks = ordered_json::array();
    for (const auto& [y, z] : opt.directions) {
        ordered_json j;
        j["direction"] = ordered_json::array({0, to_str(y), to_str(z)});
        Direction3<F> dir(F(0), F(y), F(z));
        auto hc = classify_height(c, dir);
        j["height"] = height_json(hc);
        j["ade_oracle"] = to_string(ade_recognize(height_jet(c, dir)));
        dblocks.push_back(j);
    }
    rep["height_directions"] = dblocks;

    if (!is_zero(c.a(2, 0))) {
        auto br = trace_branch(c, t, opt.branch_order);
        ordered_json bj;
        ordered_json series = ordered_json::array();
        for (int d = 0; d <= br.series.order(); ++d)
            if (!is_zero(br.series.coeff(d)))
                series.push_back(ordered_json::array({d, to_str(br.series.coeff(d))}));
        bj["series"] = series;
        bj["order"] = br.series.order();
        bj["contact"] = br.contact;
        bj["contact_is_lower_bound"] = br.contact_is_lower_bound;
        bj["guaranteed_order"] = br.guaranteed_order;
        rep["branch"] = bj;
        if (c.order() >= 5) {
            auto inv = curve_invariants(c, br);
            ordered_json tj;
            tj["tau0"] = exact_value_json(inv.tau0, to_double(inv.tau0));
            tj["tau0_prime"] = exact_value_json(inv.tau0prime, to_double(inv.tau0prime));
            tj["binormal0"] =
                ordered_json::array({inv.binormal0[0], inv.binormal0[1], inv.binormal0[2]});
            tj["curvature0_sq"] = exact_value_json(inv.curvature0_sq, to_double(inv.curvature0_sq));
            tj["atype_by_torsion"] = to_string(classify_by_torsion(inv));
            rep["torsion"] = tj;
        }
    }

    if (opt.with_oracle && !pd.thetas.empty()) {
        // numeric residuals at the first parabolic direction
        const auto& th = pd.thetas[0];
        double theta = th.radians();
        auto g = c.germ();
        ordered_json oj;
        auto lk1 = oracle::blowup_limit(g, n, theta, oracle::BlowupQuantity::k10);
        oj["k10_residual"] = std::abs(lk1.value - k10(c, n, th).value);
        auto lg = oracle::blowup_limit(g, n, theta, oracle::BlowupQuantity::gauss_scaled);
        oj["gauss_scaled_residual"] = std::abs(lg.value - gauss_scaled(c, n, th));
        rep["oracle_residuals"] = oj;
    }
    return rep;
}

}  // namespace singsurf
