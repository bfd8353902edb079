#pragma once

#include <array>
#include <cmath>
#include <functional>
#include <stdexcept>
#include <vector>

#include "singsurf/germ.hpp"

namespace singsurf {
namespace oracle {

/// Everything in this namespace is the floating-point cross-check side:
/// surface geometry from central differences of the parameterization, no
/// jet calculus, no closed forms from the classification path.

using LD = long double;
using V3 = std::array<LD, 3>;

inline V3 sub(const V3& a, const V3& b) { return {a[0] - b[0], a[1] - b[1], a[2] - b[2]}; }
inline V3 scale(LD s, const V3& a) { return {s * a[0], s * a[1], s * a[2]}; }
inline LD dot(const V3& a, const V3& b) { return a[0] * b[0] + a[1] * b[1] + a[2] * b[2]; }
inline V3 cross(const V3& a, const V3& b) {
    return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
}
inline LD norm(const V3& a) { return std::sqrt(dot(a, a)); }

using SurfaceFn = std::function<V3(LD, LD)>;

template <class F>
SurfaceFn surface_of(const MapGerm<F>& g) {
    return [g](LD u, LD v) -> V3 {
        return {g.comp[0].eval_ld(u, v), g.comp[1].eval_ld(u, v), g.comp[2].eval_ld(u, v)};
    };
}

struct SurfaceGeometry {
    V3 normal;      // unit normal g_u x g_v / | |
    double kappa1;  // principal curvature staying bounded at the blow-up
    double kappa2;  // the one blowing up (largest magnitude)
    double gauss;   // Gaussian curvature
};

namespace detail {

// O(h^4) central stencils. Steps may differ per variable: near the
// blow-up the v-direction degenerates like r^{n+1} and the stencil has
// to stay inside that scale.
template <class G>
V3 d1_stencil(const G& g, LD h) {
    V3 a = g(2 * h), b = g(h), c = g(-h), d = g(-2 * h);
    V3 r;
    for (int i = 0; i < 3; ++i) r[i] = (-a[i] + 8 * b[i] - 8 * c[i] + d[i]) / (12 * h);
    return r;
}
template <class G>
V3 d2_stencil(const G& g, LD h) {
    V3 a = g(2 * h), b = g(h), z = g(LD(0)), c = g(-h), d = g(-2 * h);
    V3 r;
    for (int i = 0; i < 3; ++i)
        r[i] = (-a[i] + 16 * b[i] - 30 * z[i] + 16 * c[i] - d[i]) / (12 * h * h);
    return r;
}

}  // namespace detail

/// First/second fundamental forms by O(h^4) central differences with
/// per-variable steps hu, hv.
inline SurfaceGeometry surface_geometry_numeric(const SurfaceFn& f, LD u, LD v, LD hu, LD hv) {
    auto along_u = [&](LD t) { return f(u + t, v); };
    auto along_v = [&](LD t) { return f(u, v + t); };
    V3 fu = detail::d1_stencil(along_u, hu);
    V3 fv = detail::d1_stencil(along_v, hv);
    V3 fuu = detail::d2_stencil(along_u, hu);
    V3 fvv = detail::d2_stencil(along_v, hv);
    auto dv_at = [&](LD du) {
        auto slice = [&](LD t) { return f(u + du, v + t); };
        return detail::d1_stencil(slice, hv);
    };
    V3 fuv = detail::d1_stencil(dv_at, hu);
    V3 cr = cross(fu, fv);
    LD nn = norm(cr);
    if (!(nn > 0)) throw std::domain_error("surface_geometry_numeric: degenerate metric");
    V3 n = scale(1 / nn, cr);
    LD E = dot(fu, fu), Fm = dot(fu, fv), G = dot(fv, fv);
    LD L = dot(fuu, n), M = dot(fuv, n), N = dot(fvv, n);
    LD den = E * G - Fm * Fm;
    if (!(den > 0)) throw std::domain_error("surface_geometry_numeric: degenerate metric");
    LD K = (L * N - M * M) / den;
    LD H = (E * N + G * L - 2 * Fm * M) / (2 * den);
    LD disc = H * H - K;
    if (disc < 0) disc = 0;
    LD s = std::sqrt(disc);
    // stable root pair: the small eigenvalue via the product, never by
    // cancellation of two near-equal huge numbers
    LD k2 = H >= 0 ? H + s : H - s;
    LD k1 = k2 != 0 ? K / k2 : H;
    if (std::abs(k1) > std::abs(k2)) std::swap(k1, k2);
    return {n, double(k1), double(k2), double(K)};
}

inline SurfaceGeometry surface_geometry_numeric(const SurfaceFn& f, LD u, LD v, LD h) {
    return surface_geometry_numeric(f, u, v, h, h);
}

struct LimitEstimate {
    double value = 0;           // Richardson-extrapolated limit
    double order_estimate = 0;  // log-log slope of the raw sequence
    bool truncated = false;     // sample ladder shortened at the noise floor
    std::vector<std::pair<double, double>> samples;  // (r, raw value)
};

/// Richardson extrapolation for Q(r) = Q0 + c1 r + c2 r^2 + ... sampled
/// on a geometric ladder r, r/2, r/4, ...
inline double richardson(const std::vector<double>& q) {
    std::vector<double> row = q;
    int depth = std::min<std::size_t>(4, row.size() - 1);
    for (int m = 1; m <= depth; ++m) {
        double w = std::pow(2.0, m);
        for (std::size_t i = row.size() - 1; i >= std::size_t(m); --i)
            row[i] = (w * row[i] - row[i - 1]) / (w - 1);
    }
    return row.back();
}

enum class BlowupQuantity { normal_y, normal_z, k10, k20, gauss_scaled };

/// Largest exponent e such that the v-step r^{n+1}/32 at r = 2^-e keeps
/// the long-double cancellation noise in second differences below ~1e-5
/// relative: (32/r^{n+1})^2 * eps * r < 1e-5 at r = 2^-e.
inline int noise_safe_hi_exp(int n) { return std::max(4, int(37.0 / (2 * n + 1))); }

/// Numeric limit of a blow-up quantity along the ray theta, sampling a
/// dyadic ladder of radii with per-variable steps r/64 and r^{n+1}/64.
/// The sample ladder is truncated where roundoff would take over.
template <class F>
LimitEstimate blowup_limit(const MapGerm<F>& g, int n, double theta, BlowupQuantity what,
                           int r_lo_exp = 4, int r_hi_exp = 12) {
    SurfaceFn f = surface_of(g);
    LimitEstimate est;
    int safe = noise_safe_hi_exp(n);
    if (safe < r_hi_exp) {
        r_hi_exp = safe;
        est.truncated = true;
    }
    if (r_lo_exp > r_hi_exp - 3) r_lo_exp = std::max(2, r_hi_exp - 5);
    std::vector<double> vals;
    V3 ref_normal{0, 0, 0};
    bool have_ref = false;
    for (int e = r_lo_exp; e <= r_hi_exp; ++e) {
        LD r = std::pow(LD(2), -LD(e));
        LD u = r * std::cos(LD(theta));
        LD v = std::pow(r, n + 1) * std::pow(std::cos(LD(theta)), n) * std::sin(LD(theta));
        SurfaceGeometry sg =
            surface_geometry_numeric(f, u, v, r / 32, std::pow(r, n + 1) / 32);
        double q = 0;
        switch (what) {
            case BlowupQuantity::normal_y:
            case BlowupQuantity::normal_z: {
                // fix the orientation against the first sample
                if (!have_ref) {
                    ref_normal = sg.normal;
                    have_ref = true;
                }
                LD sgn_fix = dot(sg.normal, ref_normal) < 0 ? -1 : 1;
                q = double(sgn_fix * sg.normal[what == BlowupQuantity::normal_y ? 1 : 2]);
                break;
            }
            case BlowupQuantity::k10: q = sg.kappa1; break;
            case BlowupQuantity::k20: q = sg.kappa2 * std::pow(double(r), 2 * n + 2); break;
            case BlowupQuantity::gauss_scaled:
                q = sg.gauss * std::pow(double(r), 2 * n + 2);
                break;
        }
        vals.push_back(q);
        est.samples.push_back({double(r), q});
    }
    est.value = richardson(vals);
    // raw-sequence slope for pole-order checks (least squares on logs)
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    int m = 0;
    for (auto& [r, qv] : est.samples) {
        if (std::abs(qv) < 1e-300) continue;
        double lx = std::log(r), ly = std::log(std::abs(qv));
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
        ++m;
    }
    if (m >= 2) est.order_estimate = (m * sxy - sx * sy) / (m * sxx - sx * sx);
    return est;
}

/// Raw slope of log|kappa2| against log r along the ray: the pole order
/// of the second principal curvature (expected -(2n+2)).
template <class F>
double kappa2_ray_slope(const MapGerm<F>& g, int n, double theta, int r_lo_exp = 5,
                        int r_hi_exp = 12) {
    SurfaceFn f = surface_of(g);
    r_hi_exp = std::min(r_hi_exp, noise_safe_hi_exp(n));
    if (r_lo_exp > r_hi_exp - 3) r_lo_exp = std::max(2, r_hi_exp - 5);
    std::vector<double> ly;
    for (int e = r_lo_exp; e <= r_hi_exp; ++e) {
        LD r = std::pow(LD(2), -LD(e));
        LD u = r * std::cos(LD(theta));
        LD v = std::pow(r, n + 1) * std::pow(std::cos(LD(theta)), n) * std::sin(LD(theta));
        SurfaceGeometry sg =
            surface_geometry_numeric(f, u, v, r / 32, std::pow(r, n + 1) / 32);
        ly.push_back(std::log(std::abs(sg.kappa2)));
    }
    // successive dyadic slopes carry an O(r) correction; extrapolate it away
    std::vector<double> slopes;
    for (std::size_t i = 0; i + 1 < ly.size(); ++i)
        slopes.push_back((ly[i + 1] - ly[i]) / -std::log(2.0));
    std::vector<double> row = slopes;
    int depth = std::min<std::size_t>(2, row.size() - 1);
    for (int m = 1; m <= depth; ++m) {
        double w = std::pow(2.0, m);
        for (std::size_t i = row.size() - 1; i >= std::size_t(m); --i)
            row[i] = (w * row[i] - row[i - 1]) / (w - 1);
    }
    return row.back();
}

using CurveFn = std::function<V3(LD)>;

template <class F>
CurveFn curve_of(const std::array<Jet1<F>, 3>& L) {
    return [=](LD t) -> V3 { return {L[0].eval_ld(t), L[1].eval_ld(t), L[2].eval_ld(t)}; };
}

/// Torsion at parameter t by O(h^4) finite-difference Frenet formulas.
inline LD torsion_fd(const CurveFn& f, LD t, LD h) {
    auto at = [&](int o) { return f(t + o * h); };
    V3 fs[7];
    for (int o = -3; o <= 3; ++o) fs[o + 3] = at(o);
    auto combo = [&](std::initializer_list<std::pair<int, LD>> w, LD denom) {
        V3 r{0, 0, 0};
        for (auto& [o, c] : w)
            for (int i = 0; i < 3; ++i) r[i] += c * fs[o + 3][i];
        return scale(1 / denom, r);
    };
    V3 d1 = combo({{2, -1}, {1, 8}, {-1, -8}, {-2, 1}}, 12 * h);
    V3 d2 = combo({{2, -1}, {1, 16}, {0, -30}, {-1, 16}, {-2, -1}}, 12 * h * h);
    V3 d3 = combo({{-3, LD(1) / 8}, {-2, -1}, {-1, LD(13) / 8}, {1, LD(-13) / 8}, {2, 1},
                   {3, LD(-1) / 8}},
                  h * h * h);
    V3 cr = cross(d1, d2);
    LD den = dot(cr, cr);
    if (!(den > 0)) throw std::domain_error("torsion_fd: curvature vanishes");
    return dot(cr, d3) / den;
}

struct TorsionEstimate {
    double tau0 = 0;
    double tau0prime = 0;
    bool converged = false;  // step-doubling self-check succeeded
};

namespace detail {

inline TorsionEstimate torsion_ladder(const CurveFn& f, LD T) {
    std::vector<double> taus, dtaus;
    for (int e = 0; e <= 4; ++e) {
        LD t = T * std::pow(LD(2), -LD(e));
        LD h = t / 8;
        LD tp = torsion_fd(f, t, h);
        LD tm = torsion_fd(f, -t, h);
        taus.push_back(double((tp + tm) / 2));
        dtaus.push_back(double((tp - tm) / (2 * t)));
    }
    // symmetric samples: even error in t, so extrapolate in t^2
    auto rich2 = [](const std::vector<double>& q) {
        std::vector<double> row = q;
        int depth = std::min<std::size_t>(3, row.size() - 1);
        for (int m = 1; m <= depth; ++m) {
            double w = std::pow(4.0, m);
            for (std::size_t i = row.size() - 1; i >= std::size_t(m); --i)
                row[i] = (w * row[i] - row[i - 1]) / (w - 1);
        }
        return row.back();
    };
    return {rich2(taus), rich2(dtaus), false};
}

}  // namespace detail

/// tau(0) and tau'(0) by Richardson extrapolation of finite-difference
/// torsion samples. The sample scale starts at 1/16 and halves until two
/// consecutive ladders agree; curves whose torsion varies too wildly near
/// 0 (tiny convergence radius and small curvature at once) come back with
/// converged = false.
inline TorsionEstimate torsion_numeric(const CurveFn& f) {
    TorsionEstimate prev{};
    bool have_prev = false;
    for (int s = 4; s <= 7; ++s) {
        LD T = std::pow(LD(2), -LD(s));
        TorsionEstimate cur;
        try {
            cur = detail::torsion_ladder(f, T);
        } catch (const std::domain_error&) {
            have_prev = false;
            continue;  // stencil crossed a curvature zero: shrink the window
        }
        if (have_prev) {
            double scale = std::max({1.0, std::abs(cur.tau0), std::abs(cur.tau0prime)});
            if (std::abs(cur.tau0 - prev.tau0) <= 3e-6 * scale &&
                std::abs(cur.tau0prime - prev.tau0prime) <= 3e-6 * scale) {
                cur.converged = true;
                return cur;
            }
        }
        prev = cur;
        have_prev = true;
    }
    return prev;
}

}  // namespace oracle
}  // namespace singsurf
