#pragma once

#include <random>
#include <stdexcept>
#include <string>

#include "singsurf/germ.hpp"
#include "singsurf/normal_form.hpp"

namespace singsurf {

/// Deterministic random sources for corpora: aims for small rationals so
/// exact pipelines stay fast.
inline Rat rand_rat(std::mt19937_64& rng, int max_abs_num = 4, int max_den = 3,
                    bool allow_zero = true) {
    std::uniform_int_distribution<int> num(-max_abs_num, max_abs_num), den(1, max_den);
    Rat r = ratio(num(rng), den(rng));
    if (!allow_zero && is_zero(r)) r = ratio(1, den(rng));
    return r;
}

template <class F>
Mat3<F> mat3_inverse(const Mat3<F>& A) {
    const auto& m = A.m;
    F det = m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) -
            m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
            m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
    if (is_zero(det)) throw std::domain_error("mat3_inverse: singular matrix");
    Mat3<F> inv{};
    inv.m[0][0] = (m[1][1] * m[2][2] - m[1][2] * m[2][1]) / det;
    inv.m[0][1] = (m[0][2] * m[2][1] - m[0][1] * m[2][2]) / det;
    inv.m[0][2] = (m[0][1] * m[1][2] - m[0][2] * m[1][1]) / det;
    inv.m[1][0] = (m[1][2] * m[2][0] - m[1][0] * m[2][2]) / det;
    inv.m[1][1] = (m[0][0] * m[2][2] - m[0][2] * m[2][0]) / det;
    inv.m[1][2] = (m[0][2] * m[1][0] - m[0][0] * m[1][2]) / det;
    inv.m[2][0] = (m[1][0] * m[2][1] - m[1][1] * m[2][0]) / det;
    inv.m[2][1] = (m[0][1] * m[2][0] - m[0][0] * m[2][1]) / det;
    inv.m[2][2] = (m[0][0] * m[1][1] - m[0][1] * m[1][0]) / det;
    return inv;
}

/// Exact rotation from the Cayley transform of a skew matrix.
inline Mat3<Rat> cayley_rotation(const Rat& a, const Rat& b, const Rat& c) {
    Mat3<Rat> S{};
    S.m[0][1] = -a;
    S.m[0][2] = -b;
    S.m[1][0] = a;
    S.m[1][2] = -c;
    S.m[2][0] = b;
    S.m[2][1] = c;
    Mat3<Rat> ims = Mat3<Rat>::identity(), ips = Mat3<Rat>::identity();
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            ims.m[i][j] -= S.m[i][j];
            ips.m[i][j] += S.m[i][j];
        }
    return ims * mat3_inverse(ips);
}

inline Mat3<Rat> random_rotation(std::mt19937_64& rng) {
    return cayley_rotation(rand_rat(rng, 2, 2), rand_rat(rng, 2, 2), rand_rat(rng, 2, 2));
}

/// Source diffeomorphism with unit linear part plus random polynomial
/// shifts of degree 2..shift_degree.
inline std::pair<Jet2Q, Jet2Q> random_source_diffeo(std::mt19937_64& rng, int order,
                                                    int shift_degree = 3) {
    Jet2Q su = Jet2Q::var_u(order), sv = Jet2Q::var_v(order);
    std::uniform_int_distribution<int> pct(0, 99);
    for (int d = 2; d <= std::min(shift_degree, order); ++d)
        for (int j = 0; j <= d; ++j) {
            if (pct(rng) < 50) su.set_coeff(d - j, j, rand_rat(rng, 2, 2));
            if (pct(rng) < 50) sv.set_coeff(d - j, j, rand_rat(rng, 2, 2));
        }
    return {su, sv};
}

/// g -> R (g o phi), an exact A-equivalence move.
inline MapGerm<Rat> transform_germ(const MapGerm<Rat>& g, const Mat3<Rat>& rot,
                                   const Jet2Q& su, const Jet2Q& sv) {
    return g.compose(su, sv).transform(rot);
}

enum class Family { S, B, C, F, out_of_family };

/// Mond's normal forms as raw germs: S_k (u,v^2,v^3 +- u^{k+1} v),
/// B_k (u,v^2,u^2 v +- v^{2k+1}), C_k (u,v^2,u v^3 +- u^k v),
/// F_4 (u,v^2,u^3 v + v^5).
inline MapGerm<Rat> mond_normal_form(Family fam, int k, int sign, int order) {
    Jet2Q x = Jet2Q::var_u(order), p(order), q(order);
    p.set_coeff(0, 2, Rat(1));
    Rat s(sign >= 0 ? 1 : -1);
    switch (fam) {
        case Family::S:
            if (k < 1 || k + 2 > order) throw std::invalid_argument("mond_normal_form: S_k order");
            q.set_coeff(0, 3, Rat(1));
            q.set_coeff(k + 1, 1, s);
            break;
        case Family::B:
            if (k < 2 || 2 * k + 1 > order)
                throw std::invalid_argument("mond_normal_form: B_k order");
            q.set_coeff(2, 1, Rat(1));
            q.set_coeff(0, 2 * k + 1, s);
            break;
        case Family::C:
            if (k < 3 || k + 1 > order) throw std::invalid_argument("mond_normal_form: C_k order");
            q.set_coeff(1, 3, Rat(1));
            q.set_coeff(k, 1, s);
            break;
        case Family::F:
            if (order < 5) throw std::invalid_argument("mond_normal_form: F_4 order");
            q.set_coeff(3, 1, Rat(1));
            q.set_coeff(0, 5, Rat(1));
            break;
        default:
            throw std::invalid_argument("mond_normal_form: bad family");
    }
    return MapGerm<Rat>(x, p, q);
}

/// Test fixture G1: b2=1, a20=1, a21=2, a03=6 (an S1 germ whose blown-up
/// geometry has its parabolic direction at theta = pi/4).
inline NormalFormCoeffs<Rat> g1_coeffs(int order = 9) {
    NormalFormCoeffs<Rat> c(order);
    c.set_b(2, Rat(1));
    c.set_a(2, 0, Rat(1));
    c.set_a(2, 1, Rat(2));
    c.set_a(0, 3, Rat(6));
    return c;
}

/// Test fixture G2: b4=1, a20=1, a21=2, a03=6 (an S1 germ with parabolic
/// direction theta = 0, first-order ridge there, dual swallowtail).
inline NormalFormCoeffs<Rat> g2_coeffs(int order = 9) {
    NormalFormCoeffs<Rat> c(order);
    c.set_b(4, Rat(1));
    c.set_a(2, 0, Rat(1));
    c.set_a(2, 1, Rat(2));
    c.set_a(0, 3, Rat(6));
    return c;
}

}  // namespace singsurf
