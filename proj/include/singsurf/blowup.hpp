#pragma once

#include <cmath>
#include <optional>
#include <vector>

#include "singsurf/classify.hpp"
#include "singsurf/normal_form.hpp"

namespace singsurf {

/// Direction on the exceptional circle, theta in (-pi/2, pi/2].
/// Stored as an unnormalized exact pair (c, s) ~ (cos, sin) with c >= 0;
/// c == 0 encodes theta = pi/2. Every zero/sign test downstream is a
/// homogeneous polynomial in (c, s), so the missing 1/sqrt(c^2+s^2)
/// normalization never matters for exact decisions.
template <class F>
struct ThetaDirection {
    F c, s;

    ThetaDirection(F cc, F ss) : c(std::move(cc)), s(std::move(ss)) {
        int sc = sgn(c);
        if (sc == 0 && is_zero(s))
            throw std::invalid_argument("ThetaDirection: zero direction");
        if (sc < 0) {
            c = -c;
            s = -s;
        } else if (sc == 0) {
            s = F(1);
        }
    }
    static ThetaDirection from_tan(const F& t) { return ThetaDirection(F(1), t); }
    static ThetaDirection pi_half() { return ThetaDirection(F(0), F(1)); }
    static ThetaDirection from_radians(double th) {
        // pi/2 maps exactly; angles whose tangent is (within 1e-12) a
        // small rational are snapped to the exact rational tangent
        if (std::abs(std::cos(th)) < 1e-15) return pi_half();
        double t = std::tan(th);
        if (auto r = snap_to_rational(t)) return from_tan(F(*r));
        return ThetaDirection(F(Rat(std::cos(th))), F(Rat(std::sin(th))));
    }

    bool is_pi_half() const { return is_zero(c); }
    double radians() const { return std::atan2(to_double(s), to_double(c)); }
    double cos_d() const {
        double cc = to_double(c), ss = to_double(s);
        return cc / std::hypot(cc, ss);
    }
    double sin_d() const {
        double cc = to_double(c), ss = to_double(s);
        return ss / std::hypot(cc, ss);
    }
};

/// An exact quantity scaled by a positive power of rho = sqrt(c^2+s^2):
/// `scaled` carries the sign and zero set, `value` the numeric value.
template <class F>
struct ScaledValue {
    F scaled;
    double value;
};

enum class PointType { elliptic, hyperbolic, parabolic };
enum class RidgeOrder { not_ridge, first_order, higher_order };

inline const char* to_string(PointType t) {
    switch (t) {
        case PointType::elliptic: return "elliptic";
        case PointType::hyperbolic: return "hyperbolic";
        default: return "parabolic";
    }
}
inline const char* to_string(RidgeOrder r) {
    switch (r) {
        case RidgeOrder::not_ridge: return "not_ridge";
        case RidgeOrder::first_order: return "first_order";
        default: return "higher_order";
    }
}

namespace detail {
template <class F>
void require_in_family_n(const NormalFormCoeffs<F>& c, int n) {
    if (n < 1 || is_zero(c.a(n + 1, 1)))
        throw std::domain_error("blow-up geometry needs a_{n+1,1} != 0 for the chart index n");
}
}  // namespace detail

/// A(theta)^2 = a_{n+1,1}^2 cos^2 + ((n+1)!)^2 sin^2, exactly; A > 0.
template <class F>
ScaledValue<F> calA_squared(const NormalFormCoeffs<F>& c, int n, const ThetaDirection<F>& th) {
    detail::require_in_family_n(c, n);
    const F& a = c.a(n + 1, 1);
    F f = factorial<F>(n + 1);
    F num = a * a * th.c * th.c + f * f * th.s * th.s;
    F den = th.c * th.c + th.s * th.s;
    F exact = num / den;
    return {exact, to_double(exact)};
}

template <class F>
double calA(const NormalFormCoeffs<F>& c, int n, const ThetaDirection<F>& th) {
    return std::sqrt(calA_squared(c, n, th).value);
}

/// Leading unit normal (0, n20, n30) with n20 = -a cos/A, n30 = (n+1)! sin/A.
/// `scaled` holds the exact unnormalized direction (0, -a c, (n+1)! s).
template <class F>
struct LeadingNormal {
    Vec3<F> scaled;
    Vec3<double> unit;
};

template <class F>
LeadingNormal<F> leading_normal(const NormalFormCoeffs<F>& c, int n,
                                const ThetaDirection<F>& th) {
    detail::require_in_family_n(c, n);
    const F& a = c.a(n + 1, 1);
    F f = factorial<F>(n + 1);
    Vec3<F> dir{F(0), -a * th.c, f * th.s};
    double y = to_double(dir[1]), z = to_double(dir[2]);
    double nn = std::hypot(y, z);
    return {dir, {0.0, y / nn, z / nn}};
}

/// k10 = (-a b2 cos + (n+1)! a20 sin)/A; scaled value is the numerator
/// times rho (sign- and zero-faithful).
template <class F>
ScaledValue<F> k10(const NormalFormCoeffs<F>& c, int n, const ThetaDirection<F>& th) {
    detail::require_in_family_n(c, n);
    const F& a = c.a(n + 1, 1);
    F f = factorial<F>(n + 1);
    F num = -a * c.b(2) * th.c + f * c.a(2, 0) * th.s;
    double rho = std::hypot(to_double(th.c), to_double(th.s));
    double val = to_double(num) / (rho * calA(c, n, th));
    return {num, val};
}

/// k20 = -((n+1)!)^2 a / (A^3 cos^{2n-1}); pole at theta = pi/2.
template <class F>
double k20(const NormalFormCoeffs<F>& c, int n, const ThetaDirection<F>& th) {
    detail::require_in_family_n(c, n);
    if (th.is_pi_half()) throw std::domain_error("pole of second curvature branch");
    const F& a = c.a(n + 1, 1);
    double f = to_double(factorial<F>(n + 1));
    double A = calA(c, n, th);
    return -f * f * to_double(a) / (std::pow(A, 3) * std::pow(th.cos_d(), 2 * n - 1));
}

/// Sign of the scaled Gaussian curvature limit r^{2n+2} K at (0, theta).
template <class F>
PointType point_type(const NormalFormCoeffs<F>& c, int n, const ThetaDirection<F>& th) {
    detail::require_in_family_n(c, n);
    if (th.is_pi_half())
        throw std::domain_error("point_type: undefined at theta = pi/2 (cos = 0)");
    const F& a = c.a(n + 1, 1);
    F f = factorial<F>(n + 1);
    // sign of a * (a b2 cos - (n+1)! a20 sin) / cos^{2n-1}; cos > 0 here
    F inner = a * c.b(2) * th.c - f * c.a(2, 0) * th.s;
    int s = sgn(a * inner);
    if (s > 0) return PointType::elliptic;
    if (s < 0) return PointType::hyperbolic;
    return PointType::parabolic;
}

/// Scaled Gaussian leading coefficient r^{2n+2} K(0, theta), numeric.
template <class F>
double gauss_scaled(const NormalFormCoeffs<F>& c, int n, const ThetaDirection<F>& th) {
    if (th.is_pi_half()) throw std::domain_error("gauss_scaled: undefined at theta = pi/2");
    return k10(c, n, th).value * k20(c, n, th);
}

template <class F>
struct Deltas {
    ScaledValue<F> d1, d2, d3;  // scaled by rho, rho^2, rho respectively
};

/// Delta_1 = a b3 cos - (n+1)! a30 sin
/// Delta_2 = -(a b4 cos - (n+1)! a40 sin) cos
///           + 3 (a20^2 + b2^2)(a b2 cos - (n+1)! a20 sin) cos + 12 a21 sin^2
/// Delta_3 = a a20 cos - (n+1)! b2 sin
template <class F>
Deltas<F> deltas(const NormalFormCoeffs<F>& c, int n, const ThetaDirection<F>& th) {
    detail::require_in_family_n(c, n);
    if (th.is_pi_half())
        throw std::domain_error("deltas: undefined at theta = pi/2 (cos = 0)");
    const F& a = c.a(n + 1, 1);
    F f = factorial<F>(n + 1);
    const F &cc = th.c, &ss = th.s;
    F rho2 = cc * cc + ss * ss;
    double rho = std::sqrt(to_double(rho2));
    F d1 = a * c.b(3) * cc - f * c.a(3, 0) * ss;
    F d2 = -(a * c.b(4) * cc - f * c.a(4, 0) * ss) * cc +
           F(3) * (c.a(2, 0) * c.a(2, 0) + c.b(2) * c.b(2)) *
               (a * c.b(2) * cc - f * c.a(2, 0) * ss) * cc +
           F(12) * c.a(2, 1) * ss * ss;
    F d3 = a * c.a(2, 0) * cc - f * c.b(2) * ss;
    return {{d1, to_double(d1) / rho},
            {d2, to_double(d2) / to_double(rho2)},
            {d3, to_double(d3) / rho}};
}

template <class F>
RidgeOrder ridge_order(const NormalFormCoeffs<F>& c, int n, const ThetaDirection<F>& th) {
    auto d = deltas(c, n, th);
    if (!is_zero(d.d1.scaled)) return RidgeOrder::not_ridge;
    if (!is_zero(d.d2.scaled)) return RidgeOrder::first_order;
    return RidgeOrder::higher_order;
}

template <class F>
bool subparabolic(const NormalFormCoeffs<F>& c, int n, const ThetaDirection<F>& th) {
    return is_zero(deltas(c, n, th).d3.scaled);
}

/// All directions with k10(theta) = 0.
template <class F>
struct ParabolicDirections {
    std::vector<ThetaDirection<F>> thetas;  // finite parabolic directions, cos != 0
    bool pi_half_case = false;              // inflection: k10 vanishes only at pi/2
    bool all_directions = false;            // degenerate inflection: k10 == 0 identically
};

template <class F>
ParabolicDirections<F> parabolic_thetas(const NormalFormCoeffs<F>& c, int n) {
    detail::require_in_family_n(c, n);
    const F& a = c.a(n + 1, 1);
    F f = factorial<F>(n + 1);
    ParabolicDirections<F> out;
    if (!is_zero(c.a(2, 0))) {
        // single root tan(theta0) = a b2 / ((n+1)! a20)
        out.thetas.push_back(ThetaDirection<F>(f * c.a(2, 0), a * c.b(2)));
        return out;
    }
    if (!is_zero(c.b(2))) {
        out.pi_half_case = true;
        return out;
    }
    out.all_directions = true;
    return out;
}

/// Everything about one direction over the singular point.
template <class F>
struct OverSingularityReport {
    std::optional<PointType> type;        // absent at theta = pi/2
    std::optional<RidgeOrder> ridge;      // absent at theta = pi/2
    std::optional<bool> sub_parabolic;    // absent at theta = pi/2
    std::optional<Deltas<F>> delta;       // absent at theta = pi/2
    ScaledValue<F> k10_val{F(0), 0.0};
    std::optional<double> k20_val;        // absent at theta = pi/2
};

template <class F>
OverSingularityReport<F> over_singularity(const NormalFormCoeffs<F>& c, int n,
                                          const ThetaDirection<F>& th) {
    OverSingularityReport<F> r;
    r.k10_val = k10(c, n, th);
    if (th.is_pi_half()) return r;
    r.type = point_type(c, n, th);
    r.ridge = ridge_order(c, n, th);
    r.sub_parabolic = subparabolic(c, n, th);
    r.delta = deltas(c, n, th);
    r.k20_val = k20(c, n, th);
    return r;
}

}  // namespace singsurf
