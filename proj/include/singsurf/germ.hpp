#pragma once

#include <array>
#include <stdexcept>

#include "singsurf/jet.hpp"

namespace singsurf {

template <class F>
using Vec3 = std::array<F, 3>;

template <class F>
struct Mat3 {
    std::array<std::array<F, 3>, 3> m;

    static Mat3 identity() {
        Mat3 r{};
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) r.m[i][j] = F(i == j ? 1 : 0);
        return r;
    }
    friend Mat3 operator*(const Mat3& a, const Mat3& b) {
        Mat3 r{};
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) {
                F acc(0);
                for (int k = 0; k < 3; ++k) acc += a.m[i][k] * b.m[k][j];
                r.m[i][j] = acc;
            }
        return r;
    }
    Vec3<F> apply(const Vec3<F>& v) const {
        Vec3<F> r{F(0), F(0), F(0)};
        for (int i = 0; i < 3; ++i)
            for (int k = 0; k < 3; ++k) r[i] += m[i][k] * v[k];
        return r;
    }
    template <class G>
    Mat3<G> map() const {
        Mat3<G> r{};
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) r.m[i][j] = G(m[i][j]);
        return r;
    }
};

/// Map-germ (R^2,0) -> (R^3,0) as a triple of jets with a shared
/// truncation order and vanishing constant terms.
template <class F>
struct MapGerm {
    std::array<Jet2<F>, 3> comp;

    explicit MapGerm(int order)
        : comp{Jet2<F>(order), Jet2<F>(order), Jet2<F>(order)} {}
    MapGerm(Jet2<F> x, Jet2<F> y, Jet2<F> z) : comp{std::move(x), std::move(y), std::move(z)} {
        if (comp[0].order() != comp[1].order() || comp[0].order() != comp[2].order())
            throw std::invalid_argument("MapGerm: components must share one truncation order");
        for (const auto& c : comp)
            if (!is_zero(c.coeff(0, 0)))
                throw std::invalid_argument("MapGerm: nonzero constant term");
    }

    int order() const { return comp[0].order(); }

    MapGerm compose(const Jet2<F>& su, const Jet2<F>& sv) const {
        return MapGerm(comp[0].compose(su, sv), comp[1].compose(su, sv),
                       comp[2].compose(su, sv));
    }

    /// Left-multiply the target by a matrix (rows act on components).
    MapGerm transform(const Mat3<F>& r) const {
        MapGerm out(order());
        for (int i = 0; i < 3; ++i) {
            Jet2<F> acc(order());
            for (int k = 0; k < 3; ++k) {
                if (is_zero(r.m[i][k])) continue;
                acc = acc + r.m[i][k] * comp[k];
            }
            out.comp[i] = acc;
        }
        return out;
    }

    template <class G>
    MapGerm<G> map_coeffs() const {
        return MapGerm<G>(comp[0].template map_coeffs<G>(), comp[1].template map_coeffs<G>(),
                          comp[2].template map_coeffs<G>());
    }

    Vec3<double> eval_d(double u, double v) const {
        return {comp[0].eval_d(u, v), comp[1].eval_d(u, v), comp[2].eval_d(u, v)};
    }
};

template <class F>
struct CorankInfo {
    int corank;              // 0, 1, or 2
    std::array<F, 2> eta;    // kernel direction when corank == 1
};

/// Rank analysis of the differential at the origin.
template <class F>
CorankInfo<F> corank_check(const MapGerm<F>& g) {
    // columns of dg(0)
    Vec3<F> cu{g.comp[0].coeff(1, 0), g.comp[1].coeff(1, 0), g.comp[2].coeff(1, 0)};
    Vec3<F> cv{g.comp[0].coeff(0, 1), g.comp[1].coeff(0, 1), g.comp[2].coeff(0, 1)};
    auto vec_zero = [](const Vec3<F>& v) {
        return is_zero(v[0]) && is_zero(v[1]) && is_zero(v[2]);
    };
    bool zu = vec_zero(cu), zv = vec_zero(cv);
    if (zu && zv) return {2, {F(0), F(0)}};
    if (zv) return {1, {F(0), F(1)}};
    if (zu) return {1, {F(1), F(0)}};
    // both columns nonzero: rank 1 iff all 2x2 minors vanish
    for (int i = 0; i < 3; ++i)
        for (int j = i + 1; j < 3; ++j)
            if (!is_zero(cu[i] * cv[j] - cu[j] * cv[i])) return {0, {F(0), F(0)}};
    // columns proportional: cu = t*cv with t from the first nonzero entry of cv
    int piv = !is_zero(cv[0]) ? 0 : (!is_zero(cv[1]) ? 1 : 2);
    F t = cu[piv] / cv[piv];
    return {1, {F(1), -t}};
}

}  // namespace singsurf
