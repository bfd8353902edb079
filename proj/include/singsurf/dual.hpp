#pragma once

#include <array>
#include <cmath>
#include <string>
#include <vector>

#include "singsurf/parabolic.hpp"

namespace singsurf {

enum class DualSingularity { cuspidal_edge, swallowtail, unresolved };

inline const char* to_string(DualSingularity d) {
    switch (d) {
        case DualSingularity::cuspidal_edge: return "cuspidal_edge";
        case DualSingularity::swallowtail: return "swallowtail";
        default: return "unresolved";
    }
}

struct DualLabel {
    DualSingularity label;
    std::string basis;  // which clause fired, or which hypothesis failed
};

/// Dual-surface singularity over a direction on the exceptional circle.
/// Ridge is tested before the plain parabolic clause, so cuspidal_edge is
/// only emitted at parabolic non-ridge directions.
template <class F>
DualLabel dual_label(const NormalFormCoeffs<F>& c, const AType& t, const ThetaDirection<F>& th) {
    if (!t.in_family()) throw std::domain_error("dual_label: germ is out of family");
    if (is_zero(c.a(2, 0)))
        throw std::domain_error("dual_label: inflection germ, dual hypotheses violated");
    int n = t.blowup_n;
    if (th.is_pi_half() || point_type(c, n, th) != PointType::parabolic)
        return {DualSingularity::unresolved, "not a parabolic direction over the singularity"};
    switch (ridge_order(c, n, th)) {
        case RidgeOrder::not_ridge:
            return {DualSingularity::cuspidal_edge, "parabolic, not ridge"};
        case RidgeOrder::first_order:
            if (!subparabolic(c, n, th))
                return {DualSingularity::swallowtail,
                        "parabolic, first-order ridge, not sub-parabolic"};
            return {DualSingularity::unresolved, "sub-parabolic"};
        default:
            return {DualSingularity::unresolved, "second-or-higher-order ridge"};
    }
}

/// Numeric dual-surface point <g+p, n> n at a regular parameter point,
/// with n the unit normal computed from exact jet partials.
template <class F>
Vec3<double> dual_point(const NormalFormCoeffs<F>& c, const Vec3<double>& p_shift, double u,
                        double v) {
    MapGerm<F> g = c.germ();
    std::array<Jet2<F>, 3> gu, gv;
    for (int i = 0; i < 3; ++i) {
        gu[i] = g.comp[i].derivative(Jet2<F>::Var::u);
        gv[i] = g.comp[i].derivative(Jet2<F>::Var::v);
    }
    Vec3<double> du{gu[0].eval_d(u, v), gu[1].eval_d(u, v), gu[2].eval_d(u, v)};
    Vec3<double> dv{gv[0].eval_d(u, v), gv[1].eval_d(u, v), gv[2].eval_d(u, v)};
    Vec3<double> cr{du[1] * dv[2] - du[2] * dv[1], du[2] * dv[0] - du[0] * dv[2],
                    du[0] * dv[1] - du[1] * dv[0]};
    double nn = std::sqrt(cr[0] * cr[0] + cr[1] * cr[1] + cr[2] * cr[2]);
    if (!(nn > 1e-13)) throw std::domain_error("dual_point: singular parameter point");
    Vec3<double> n{cr[0] / nn, cr[1] / nn, cr[2] / nn};
    Vec3<double> gbar = g.eval_d(u, v);
    for (int i = 0; i < 3; ++i) gbar[i] += p_shift[i];
    double w = gbar[0] * n[0] + gbar[1] * n[1] + gbar[2] * n[2];
    if (std::abs(w) < 1e-13) throw std::domain_error("dual_point: dual undefined here");
    return {w * n[0], w * n[1], w * n[2]};
}

struct DualMesh {
    struct Vertex {
        double r, theta;
        Vec3<double> pos;
        std::string point_type;
    };
    std::vector<Vertex> vertices;
    std::vector<std::array<int, 3>> faces;  // 0-based triangles
};

struct DualMeshSpec {
    int r_steps = 16;
    int theta_steps = 32;
    double r_max = 0.25;
    double theta_margin = 0.2;  // stay away from the v-axis (theta = +-pi/2)
    Vec3<double> p_shift{0.0, 0.0, 0.0};
    bool p_shift_set = false;
};

/// Sample the dual surface over a polar grid in the blow-up chart.
/// The default p-shift is the leading normal at the first parabolic
/// direction, which satisfies the <p, n(0,theta0)> != 0 hypothesis.
template <class F>
DualMesh dual_mesh(const NormalFormCoeffs<F>& c, const AType& t, DualMeshSpec spec = {}) {
    if (!t.in_family()) throw std::domain_error("dual_mesh: germ is out of family");
    if (is_zero(c.a(2, 0)))
        throw std::domain_error("dual_mesh: inflection germ, dual hypotheses violated");
    if (spec.r_steps < 1 || spec.theta_steps < 1)
        throw std::invalid_argument("dual_mesh: empty grid");
    int n = t.blowup_n;
    auto pd = parabolic_thetas(c, n);
    if (!spec.p_shift_set) {
        if (pd.thetas.empty()) throw std::domain_error("dual_mesh: no parabolic direction");
        spec.p_shift = leading_normal(c, n, pd.thetas[0]).unit;
    }
    // hypothesis <p, n(0,theta0)> != 0 at every parabolic direction
    for (const auto& th0 : pd.thetas) {
        auto ln = leading_normal(c, n, th0).unit;
        double dp = ln[0] * spec.p_shift[0] + ln[1] * spec.p_shift[1] + ln[2] * spec.p_shift[2];
        if (std::abs(dp) < 1e-12)
            throw std::domain_error("dual_mesh: p-shift violates <p, n(0,theta0)> != 0");
    }

    DualMesh mesh;
    std::vector<std::string> theta_types(spec.theta_steps);
    std::vector<double> thetas(spec.theta_steps);
    for (int j = 0; j < spec.theta_steps; ++j) {
        double lo = -M_PI / 2 + spec.theta_margin, hi = M_PI / 2 - spec.theta_margin;
        double th = spec.theta_steps == 1 ? (lo + hi) / 2
                                          : lo + (hi - lo) * j / (spec.theta_steps - 1);
        thetas[j] = th;
        auto td = ThetaDirection<F>::from_radians(th);
        theta_types[j] = to_string(point_type(c, n, td));
    }
    for (int i = 0; i < spec.r_steps; ++i) {
        double r = spec.r_max * double(i + 1) / spec.r_steps;
        for (int j = 0; j < spec.theta_steps; ++j) {
            double th = thetas[j];
            double u = r * std::cos(th);
            double v = std::pow(r, n + 1) * std::pow(std::cos(th), n) * std::sin(th);
            mesh.vertices.push_back({r, th, dual_point(c, spec.p_shift, u, v), theta_types[j]});
        }
    }
    for (int i = 0; i + 1 < spec.r_steps; ++i)
        for (int j = 0; j + 1 < spec.theta_steps; ++j) {
            int a = i * spec.theta_steps + j;
            int b = a + 1;
            int cidx = a + spec.theta_steps;
            int d = cidx + 1;
            mesh.faces.push_back({a, b, d});
            mesh.faces.push_back({a, d, cidx});
        }
    return mesh;
}

}  // namespace singsurf
