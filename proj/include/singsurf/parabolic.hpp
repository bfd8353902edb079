#pragma once

#include <algorithm>
#include <optional>
#include <string>
#include <vector>

#include "singsurf/height.hpp"

namespace singsurf {

/// Parabolic-set defining function Sigma = L'N' - M'^2 with
/// L' = <g_uu, g_u x g_v> etc., computed by jet arithmetic from the
/// normal form. The result lives at order K-2.
template <class F>
Jet2<F> sigma_jet(const NormalFormCoeffs<F>& c) {
    const int K = c.order();
    if (K < 4) throw std::domain_error("sigma_jet: needs order >= 4");
    MapGerm<F> g = c.germ();
    const int Ks = K - 2;
    std::array<Jet2<F>, 3> gu, gv, guu, guv, gvv;
    for (int i = 0; i < 3; ++i) {
        Jet2<F> du = g.comp[i].derivative(Jet2<F>::Var::u);
        Jet2<F> dv = g.comp[i].derivative(Jet2<F>::Var::v);
        guu[i] = du.derivative(Jet2<F>::Var::u);
        guv[i] = du.derivative(Jet2<F>::Var::v);
        gvv[i] = dv.derivative(Jet2<F>::Var::v);
        gu[i] = du.truncated(Ks);
        gv[i] = dv.truncated(Ks);
    }
    std::array<Jet2<F>, 3> cross{gu[1] * gv[2] - gu[2] * gv[1], gu[2] * gv[0] - gu[0] * gv[2],
                                 gu[0] * gv[1] - gu[1] * gv[0]};
    auto dot = [&](const std::array<Jet2<F>, 3>& a) {
        return a[0] * cross[0] + a[1] * cross[1] + a[2] * cross[2];
    };
    Jet2<F> L = dot(guu), M = dot(guv), N = dot(gvv);
    return L * N - M * M;
}

/// Lower-left Newton polygon of the support of a jet: the vertices of the
/// convex hull of support + R_{>=0}^2, listed with increasing u-exponent.
template <class F>
std::vector<std::pair<int, int>> newton_polygon(const Jet2<F>& s) {
    if (s.is_zero_jet()) throw std::invalid_argument("newton_polygon: zero jet");
    // Pareto-minimal staircase: for each i the least j, kept while
    // strictly decreasing in j.
    std::vector<std::pair<int, int>> frontier;
    int best = s.order() + 1;
    for (int i = 0; i <= s.order(); ++i) {
        for (int j = 0; i + j <= s.order(); ++j) {
            if (!is_zero(s.coeff(i, j))) {
                if (j < best) {
                    frontier.push_back({i, j});
                    best = j;
                }
                break;
            }
        }
        if (best == 0) break;
    }
    // lower-left convex hull of the staircase (slopes strictly increasing)
    std::vector<std::pair<int, int>> hull;
    for (auto& p : frontier) {
        while (hull.size() >= 2) {
            auto& a = hull[hull.size() - 2];
            auto& b = hull[hull.size() - 1];
            long cx = long(b.first - a.first) * long(p.second - a.second) -
                      long(b.second - a.second) * long(p.first - a.first);
            if (cx <= 0)
                hull.pop_back();  // b lies on or above the chord a -> p
            else
                break;
        }
        hull.push_back(p);
    }
    return hull;
}

/// The characteristic branch v = beta(u) of Sigma = 0 through the
/// singular point, solved order by order from the leading coefficient
/// a_{n+1,1} b_2 / ((n+1)! a_{20}).
template <class F>
struct BranchSeries {
    Jet1<F> series;     // beta, coefficients n+1 .. N
    int contact;        // contact order with the tangent line v = 0
    bool contact_is_lower_bound;  // true when beta == 0 through order N
    int guaranteed_order;         // Sigma(u, beta(u)) vanishes through this order
};

template <class F>
BranchSeries<F> trace_branch(const NormalFormCoeffs<F>& c, const AType& t, int N = -1) {
    if (!t.in_family()) throw std::domain_error("trace_branch: germ is out of family");
    if (is_zero(c.a(2, 0)))
        throw std::domain_error("trace_branch: inflection germ (a20 = 0) rejected");
    const int n = t.blowup_n;
    const int Ks = c.order() - 2;
    const int Nmax = Ks - n - 1;
    if (N < 0) N = Nmax;
    if (N > Nmax || N < n + 1)
        throw std::domain_error("trace_branch: requested order needs jet order >= " +
                                std::to_string(N + n + 3));
    Jet2<F> S = sigma_jet(c);
    Jet1<F> u1 = Jet1<F>::var(Ks);
    Jet1<F> beta(Ks);
    for (int d = n + 1; d <= N; ++d) {
        auto residual_at = [&](const F& x) {
            Jet1<F> cand = beta;
            cand.set_coeff(d, x);
            return S.compose_curve(u1, cand).coeff(n + 1 + d);
        };
        F r0 = residual_at(F(0));
        F r1 = residual_at(F(1));
        F slope = r1 - r0;
        if (is_zero(slope))
            throw std::domain_error("trace_branch: branch continuation ambiguous at step " +
                                    std::to_string(d));
        beta.set_coeff(d, -r0 / slope);
    }
    // verify the residual through the guaranteed order
    Jet1<F> res = S.compose_curve(u1, beta);
    for (int d = 0; d <= n + 1 + N; ++d)
        if (!is_zero(res.coeff(d)))
            throw std::logic_error("trace_branch: residual does not vanish at order " +
                                   std::to_string(d));
    BranchSeries<F> out{beta.truncated(N), 0, false, n + 1 + N};
    int low = out.series.low_degree();
    if (low > N) {
        out.contact = N + 1;
        out.contact_is_lower_bound = true;
    } else {
        out.contact = low;
    }
    return out;
}

/// Frenet data of a space-curve jet at t = 0.
template <class F>
struct SpaceCurveInvariants {
    Vec3<F> binormal_scaled;   // L' x L'' at 0, unnormalized
    Vec3<double> binormal0;    // unit binormal
    F curvature0_sq;           // kappa(0)^2 (|L'(0)| normalized away by the caller)
    F tau0;
    F tau0prime;
};

namespace detail {

template <class F>
SpaceCurveInvariants<F> frenet_invariants(const std::array<Jet1<F>, 3>& curve) {
    const int N = curve[0].order();
    if (N < 5)
        throw std::domain_error("frenet_invariants: torsion derivative needs a degree-5 jet");
    const int M = N - 3;
    std::array<Jet1<F>, 3> d1, d2, d3;
    for (int i = 0; i < 3; ++i) {
        d1[i] = curve[i].derivative().truncated(M);
        d2[i] = curve[i].derivative().derivative().truncated(M);
        d3[i] = curve[i].derivative().derivative().derivative().truncated(M);
    }
    std::array<Jet1<F>, 3> cr{d1[1] * d2[2] - d1[2] * d2[1], d1[2] * d2[0] - d1[0] * d2[2],
                              d1[0] * d2[1] - d1[1] * d2[0]};
    Jet1<F> num = cr[0] * d3[0] + cr[1] * d3[1] + cr[2] * d3[2];
    Jet1<F> den = cr[0] * cr[0] + cr[1] * cr[1] + cr[2] * cr[2];
    if (is_zero(den.coeff(0)))
        throw std::domain_error("frenet_invariants: curvature vanishes, torsion undefined");
    F d0 = den.coeff(0), d1c = den.coeff(1);
    F n0 = num.coeff(0), n1 = num.coeff(1);
    SpaceCurveInvariants<F> out{{cr[0].coeff(0), cr[1].coeff(0), cr[2].coeff(0)},
                                {0, 0, 0},
                                F(0),
                                n0 / d0,
                                (n1 * d0 - n0 * d1c) / (d0 * d0)};
    F e2(0);
    for (int i = 0; i < 3; ++i) e2 += d1[i].coeff(0) * d1[i].coeff(0);
    out.curvature0_sq = d0 / int_pow(e2, 3);
    double bx = to_double(out.binormal_scaled[0]), by = to_double(out.binormal_scaled[1]),
           bz = to_double(out.binormal_scaled[2]);
    double bn = std::sqrt(bx * bx + by * by + bz * bz);
    out.binormal0 = {bx / bn, by / bn, bz / bn};
    return out;
}

}  // namespace detail

/// Curve L(t) = g(t, beta(t)), its binormal and torsion jet at 0. The
/// closed forms for tau(0), tau'(0) in terms of the table are recovered
/// exactly; this routine computes them from the jet Frenet formulas.
template <class F>
SpaceCurveInvariants<F> curve_invariants(const NormalFormCoeffs<F>& c,
                                         const BranchSeries<F>& br) {
    if (c.order() < 5) throw std::domain_error("curve_invariants: needs jet order >= 5");
    const int N = std::max(br.series.order(), 5);
    Jet1<F> beta = br.series.truncated(N);
    Jet1<F> t = Jet1<F>::var(N);
    std::array<Jet1<F>, 3> L{t, c.p_jet().compose_curve(t, beta),
                             c.q_jet().compose_curve(t, beta)};
    return detail::frenet_invariants(L);
}

enum class TorsionClass { A2, A3, A4plus };

inline const char* to_string(TorsionClass t) {
    switch (t) {
        case TorsionClass::A2: return "A2";
        case TorsionClass::A3: return "A3";
        default: return "A4plus";
    }
}

template <class F>
TorsionClass classify_by_torsion(const SpaceCurveInvariants<F>& inv) {
    if (!is_zero(inv.tau0)) return TorsionClass::A2;
    if (!is_zero(inv.tau0prime)) return TorsionClass::A3;
    return TorsionClass::A4plus;
}

inline HType to_htype(TorsionClass t) {
    switch (t) {
        case TorsionClass::A2: return HType::A2;
        case TorsionClass::A3: return HType::A3;
        default: return HType::A4plus;
    }
}

/// Monge-form regular surface z = f(x,y), f = k2 v^2/2 + higher terms,
/// parabolic and non-umbilic at the origin (k1 = 0, k2 != 0).
template <class F>
struct MongeForm {
    int order;
    F k2;
    Jet2<F> a;  // a(i,j) for 3 <= i+j <= order, factorial-normalized like q

    explicit MongeForm(int ord) : order(ord), k2(0), a(ord) {}
    Jet2<F> graph_jet() const {
        Jet2<F> f(order);
        f.set_coeff(0, 2, k2 / F(2));
        for (int d = 3; d <= order; ++d)
            for (int j = 0; j <= d; ++j) {
                int i = d - j;
                if (!is_zero(a.coeff(i, j)))
                    f.set_coeff(i, j, a.coeff(i, j) / (factorial<F>(i) * factorial<F>(j)));
            }
        return f;
    }
};

template <class F>
struct RegularParabolicReport {
    HType label;                 // A2 / A3 / A4plus of the height along +-n(0,0)
    bool binormal_is_normal;     // b(0) = +-n(0,0), equivalent to a30 = 0
    std::optional<SpaceCurveInvariants<F>> invariants;
    std::string basis;
};

/// Height-function type at a parabolic point of a regular surface and the
/// torsion data of the parabolic curve through it.
template <class F>
RegularParabolicReport<F> regular_parabolic_check(const MongeForm<F>& m) {
    if (is_zero(m.k2)) throw std::domain_error("regular_parabolic_check: k2 must be nonzero");
    const F a30 = m.a.coeff(3, 0), a21 = m.a.coeff(2, 1), a40 = m.a.coeff(4, 0);
    if (is_zero(a30) && is_zero(a21))
        throw std::domain_error("regular_parabolic_check: parabolic set singular at the origin");
    if (is_zero(F(2) * a21 * a21 - a40 * m.k2) && is_zero(a30))
        throw std::domain_error("curvature degenerate, proposition inapplicable");

    RegularParabolicReport<F> out{HType::A2, false, std::nullopt, ""};
    if (!is_zero(a30)) {
        out.label = HType::A2;
        out.binormal_is_normal = false;
        out.basis = "a30 != 0: b(0) != +-n(0,0)";
    } else {
        out.binormal_is_normal = true;
        F a3cond = a40 * m.k2 - F(3) * a21 * a21;
        if (!is_zero(a3cond)) {
            out.label = HType::A3;
            out.basis = "a30 = 0, a40 k2 - 3 a21^2 != 0";
        } else {
            out.label = HType::A4plus;
            out.basis = "a30 = a40 k2 - 3 a21^2 = 0";
        }
    }

    // Parabolic branch and its torsion: solve det Hess f = 0 for a curve
    // through 0; the smooth direction decides the parameterization.
    const int K = m.order;
    if (K >= 7) {
        Jet2<F> f = m.graph_jet();
        Jet2<F> fu = f.derivative(Jet2<F>::Var::u);
        Jet2<F> fv = f.derivative(Jet2<F>::Var::v);
        const int Ks = K - 2;
        Jet2<F> fuu = fu.derivative(Jet2<F>::Var::u).truncated(Ks);
        Jet2<F> fuv = fu.derivative(Jet2<F>::Var::v).truncated(Ks);
        Jet2<F> fvv = fv.derivative(Jet2<F>::Var::v).truncated(Ks);
        Jet2<F> det = fuu * fvv - fuv * fuv;
        bool solve_v = !is_zero(a21);  // dv det(0) = a21 k2
        Jet1<F> t = Jet1<F>::var(Ks), gamma(Ks);
        for (int d = 1; d <= Ks - 1; ++d) {
            auto residual_at = [&](const F& x) {
                Jet1<F> cand = gamma;
                cand.set_coeff(d, x);
                return solve_v ? det.compose_curve(t, cand).coeff(d)
                               : det.compose_curve(cand, t).coeff(d);
            };
            F r0 = residual_at(F(0)), r1 = residual_at(F(1));
            F slope = r1 - r0;
            if (is_zero(slope))
                throw std::domain_error("regular_parabolic_check: branch solve ambiguous");
            gamma.set_coeff(d, -r0 / slope);
        }
        std::array<Jet1<F>, 3> L;
        if (solve_v)
            L = {t, gamma, f.truncated(Ks).compose_curve(t, gamma)};
        else
            L = {gamma, t, f.truncated(Ks).compose_curve(gamma, t)};
        out.invariants = detail::frenet_invariants(L);
    }
    return out;
}

}  // namespace singsurf
