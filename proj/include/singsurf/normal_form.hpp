#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "singsurf/algebraic.hpp"
#include "singsurf/germ.hpp"
#include "singsurf/jet.hpp"

namespace singsurf {

/// Coefficient table of the corank-1 normal form
///   g = (u, p, q),  p = v^2/2 + sum_i b_i u^i/i!,
///   q = a20 u^2/2 + sum_{i+j>=3} a_ij u^i v^j/(i! j!).
template <class F>
class NormalFormCoeffs {
public:
    explicit NormalFormCoeffs(int order) : order_(order), a_(order), b_(order + 1, F(0)) {
        if (order < 2) throw std::invalid_argument("NormalFormCoeffs: order must be >= 2");
    }

    int order() const { return order_; }

    const F& a(int i, int j) const {
        static const F zero(0);
        if (i < 0 || j < 0 || i + j > order_) return zero;
        if (i + j < 2 || (i + j == 2 && !(i == 2 && j == 0))) return zero;
        return a_.coeff(i, j);
    }
    void set_a(int i, int j, const F& v) {
        if (i + j < 2 || i + j > order_ || (i + j == 2 && !(i == 2 && j == 0)))
            throw std::out_of_range("NormalFormCoeffs::set_a: slot not in Eq-(2.1) table");
        a_.set_coeff(i, j, v);
    }
    const F& b(int i) const {
        static const F zero(0);
        if (i < 2 || i > order_) return zero;
        return b_[i];
    }
    void set_b(int i, const F& v) {
        if (i < 2 || i > order_) throw std::out_of_range("NormalFormCoeffs::set_b");
        b_[i] = v;
    }

    /// p = v^2/2 + sum b_i u^i / i!
    Jet2<F> p_jet() const {
        Jet2<F> p(order_);
        p.set_coeff(0, 2, F(1) / F(2));
        for (int i = 2; i <= order_; ++i)
            if (!is_zero(b_[i])) p.set_coeff(i, 0, b_[i] / factorial<F>(i));
        return p;
    }
    /// q = a20 u^2/2 + sum a_ij u^i v^j / (i! j!)
    Jet2<F> q_jet() const {
        Jet2<F> q(order_);
        for (int d = 2; d <= order_; ++d)
            for (int j = 0; j <= d; ++j) {
                int i = d - j;
                const F& c = a(i, j);
                if (!is_zero(c)) q.set_coeff(i, j, c / (factorial<F>(i) * factorial<F>(j)));
            }
        return q;
    }
    MapGerm<F> germ() const { return MapGerm<F>(Jet2<F>::var_u(order_), p_jet(), q_jet()); }

    /// Extract the table from structurally valid (p, q) jets.
    static NormalFormCoeffs from_pq(const Jet2<F>& p, const Jet2<F>& q) {
        int K = p.order();
        if (q.order() != K) throw std::invalid_argument("NormalFormCoeffs: order mismatch");
        NormalFormCoeffs c(K);
        if (!(p.coeff(0, 2) == F(1) / F(2)))
            throw std::invalid_argument("NormalFormCoeffs: p must carry v^2/2 exactly");
        for (int d = 0; d <= K; ++d)
            for (int j = 0; j <= d; ++j) {
                int i = d - j;
                const F& pc = p.coeff(i, j);
                if (j == 0) {
                    if (d < 2) {
                        if (!is_zero(pc))
                            throw std::invalid_argument("NormalFormCoeffs: p has low-order terms");
                    } else {
                        c.b_[i] = factorial<F>(i) * pc;
                    }
                } else if (!(i == 0 && j == 2) && !is_zero(pc)) {
                    throw std::invalid_argument(
                        "NormalFormCoeffs: p has forbidden v-dependent terms");
                }
                const F& qc = q.coeff(i, j);
                if (d < 2 || (d == 2 && !(i == 2 && j == 0))) {
                    if (!is_zero(qc))
                        throw std::invalid_argument("NormalFormCoeffs: q has forbidden terms");
                } else if (!is_zero(qc)) {
                    c.a_.set_coeff(i, j, factorial<F>(i) * factorial<F>(j) * qc);
                }
            }
        return c;
    }

    /// Blow-up exponent: least n >= 1 with a_{n+1,1} != 0, if any.
    std::optional<int> first_nonzero_n() const {
        for (int i = 2; i + 1 <= order_; ++i)
            if (!is_zero(a(i, 1))) return i - 1;
        return std::nullopt;
    }

    /// Flip v -> -v (negates odd-j entries of the a-table).
    NormalFormCoeffs v_flipped() const {
        NormalFormCoeffs c = *this;
        for (int d = 2; d <= order_; ++d)
            for (int j = 1; j <= d; j += 2) {
                int i = d - j;
                if (i + j >= 3 && !is_zero(c.a_.coeff(i, j))) c.a_.set_coeff(i, j, -c.a_.coeff(i, j));
            }
        return c;
    }

    template <class G>
    NormalFormCoeffs<G> map_coeffs() const {
        NormalFormCoeffs<G> r(order_);
        for (int d = 2; d <= order_; ++d)
            for (int j = 0; j <= d; ++j) {
                int i = d - j;
                if (i + j == 2 && !(i == 2 && j == 0)) continue;
                if (!is_zero(a(i, j))) r.set_a(i, j, G(a(i, j)));
            }
        for (int i = 2; i <= order_; ++i)
            if (!is_zero(b(i))) r.set_b(i, G(b(i)));
        return r;
    }

private:
    int order_;
    Jet2<F> a_;          // valid slots only: (2,0) and all i+j >= 3
    std::vector<F> b_;   // b_[i], 2 <= i <= order
};

enum class SingularPointClass { hyperbolic, inflection, degenerate_inflection };

inline const char* to_string(SingularPointClass c) {
    switch (c) {
        case SingularPointClass::hyperbolic: return "hyperbolic";
        case SingularPointClass::inflection: return "inflection";
        default: return "degenerate_inflection";
    }
}

template <class F>
SingularPointClass singular_point_class(const NormalFormCoeffs<F>& c) {
    if (!is_zero(c.a(2, 0))) return SingularPointClass::hyperbolic;
    if (!is_zero(c.b(2))) return SingularPointClass::inflection;
    return SingularPointClass::degenerate_inflection;
}

/// G = GL2 x GL2 orbit of a pair of binary quadratic forms, the
/// per-singular-point classes of the projection to the normal plane.
enum class QuadOrbit { hyperbolic, elliptic, parabolic, inflection, degenerate_inflection };

inline const char* to_string(QuadOrbit o) {
    switch (o) {
        case QuadOrbit::hyperbolic: return "hyperbolic";
        case QuadOrbit::elliptic: return "elliptic";
        case QuadOrbit::parabolic: return "parabolic";
        case QuadOrbit::inflection: return "inflection";
        default: return "degenerate_inflection";
    }
}

/// Classify the pencil of two quadratics P = (p20,p11,p02), Q = (q20,q11,q02)
/// (coefficients of u^2, uv, v^2) by the discriminant of the pencil's
/// discriminant form.
template <class F>
QuadOrbit classify_quadratic_orbit(const std::array<F, 3>& P, const std::array<F, 3>& Q) {
    auto form_zero = [](const std::array<F, 3>& f) {
        return is_zero(f[0]) && is_zero(f[1]) && is_zero(f[2]);
    };
    bool pz = form_zero(P), qz = form_zero(Q);
    if (pz && qz) return QuadOrbit::degenerate_inflection;
    // proportional pair: a single form up to scale
    bool proportional = true;
    for (int i = 0; i < 3 && proportional; ++i)
        for (int j = i + 1; j < 3; ++j)
            if (!is_zero(P[i] * Q[j] - P[j] * Q[i])) {
                proportional = false;
                break;
            }
    if (proportional) {
        const std::array<F, 3>& f = pz ? Q : P;
        F disc = f[1] * f[1] - F(4) * f[0] * f[2];
        return is_zero(disc) ? QuadOrbit::degenerate_inflection : QuadOrbit::inflection;
    }
    // disc(l*P + m*Q) = A l^2 + B lm + C m^2
    F A = P[1] * P[1] - F(4) * P[0] * P[2];
    F C = Q[1] * Q[1] - F(4) * Q[0] * Q[2];
    F B = F(2) * P[1] * Q[1] - F(4) * (P[0] * Q[2] + Q[0] * P[2]);
    F delta = B * B - F(4) * A * C;
    int s = sgn(delta);
    if (s > 0) return QuadOrbit::hyperbolic;
    if (s < 0) return QuadOrbit::elliptic;
    return QuadOrbit::parabolic;
}

struct ReduceError {
    enum class Kind { corank0, corank2, unsupported_2jet, insufficient_jet };
    Kind kind;
    std::string message;
    std::optional<QuadOrbit> orbit;  // for unsupported_2jet
};

struct ReduceOptions {
    bool track_changes = true;    // maintain source_change / target_rotation
    bool canonical_sign = true;   // flip v so the first nonzero a_{n+1,1} > 0
};

/// Result of the normal-form reduction. All scalars live in the quadratic
/// tower `field`; for rationally normalizable inputs they stay at level 0
/// except for the final v-scaling, which contributes lambda = sqrt(1/(2 rho)).
struct ReduceResult {
    NormalFormCoeffs<Alg> coeffs;
    std::shared_ptr<AlgField> field;
    // source change (u,v) -> (su, sv) and target rotation R with
    // R * (g o source_change) == (u, p, q) through order K.
    Jet2<Alg> source_u, source_v;
    Mat3<Alg> target_rotation;
};

using ReduceOutcome = std::variant<ReduceResult, ReduceError>;

namespace detail {

struct NeedsAlgebraicTower {};

// sqrt policy: the rational fast path bails out to the tower on the
// first normalization whose norm is not a perfect square.
inline Rat reduce_sqrt(const Rat& x, const std::shared_ptr<AlgField>&) {
    auto r = try_sqrt(x);
    if (!r) throw NeedsAlgebraicTower{};
    return *r;
}
inline Alg reduce_sqrt(const Alg& x, const std::shared_ptr<AlgField>& fld) {
    return fld->sqrt(x);
}

template <class F>
struct ReducePipelineResult {
    Jet2<F> p, q;       // normalized up to the final v-scaling
    F rho;              // v^2 coefficient of p before scaling (positive)
    Jet2<F> src_u, src_v;
    Mat3<F> rot;
};

template <class F>
std::variant<ReducePipelineResult<F>, ReduceError> reduce_pipeline(
    const MapGerm<F>& g_in, const ReduceOptions& opt, const std::shared_ptr<AlgField>& fld) {
    const int K = g_in.order();
    if (K < 3)
        return ReduceError{ReduceError::Kind::insufficient_jet,
                           "jet order must be at least 3 for reduction", std::nullopt};
    if (g_in.comp[0].is_zero_jet() && g_in.comp[1].is_zero_jet() && g_in.comp[2].is_zero_jet())
        return ReduceError{ReduceError::Kind::insufficient_jet, "insufficient jet data",
                           std::nullopt};

    auto ck = corank_check(g_in);
    if (ck.corank == 0)
        return ReduceError{ReduceError::Kind::corank0, "immersion (corank 0)", std::nullopt};
    if (ck.corank == 2)
        return ReduceError{ReduceError::Kind::corank2,
                           "zero differential (corank 2); reduction refuses", std::nullopt};

    const Jet2<F> U = Jet2<F>::var_u(K), V = Jet2<F>::var_v(K);
    Jet2<F> src_u = U, src_v = V;
    Mat3<F> rot = Mat3<F>::identity();
    MapGerm<F> g = g_in;

    auto push_source = [&](const Jet2<F>& su, const Jet2<F>& sv) {
        g = g.compose(su, sv);
        if (opt.track_changes) {
            Jet2<F> nu = src_u.compose(su, sv);
            Jet2<F> nv = src_v.compose(su, sv);
            src_u = nu;
            src_v = nv;
        }
    };

    // 1. align the kernel with the v-axis
    {
        std::array<F, 2> eta = ck.eta;
        std::array<F, 2> xi = !is_zero(eta[0]) ? std::array<F, 2>{F(0), F(1)}
                                               : std::array<F, 2>{F(1), F(0)};
        bool identity = is_zero(eta[0]) && eta[1] == F(1);
        if (!identity) {
            Jet2<F> su(K), sv(K);
            su.set_coeff(1, 0, xi[0]);
            su.set_coeff(0, 1, eta[0]);
            sv.set_coeff(1, 0, xi[1]);
            sv.set_coeff(0, 1, eta[1]);
            push_source(su, sv);
        }
    }

    // 2. rotate the tangent line onto the x-axis
    {
        Vec3<F> w{g.comp[0].coeff(1, 0), g.comp[1].coeff(1, 0), g.comp[2].coeff(1, 0)};
        F n2 = w[0] * w[0] + w[1] * w[1] + w[2] * w[2];
        F sigma = reduce_sqrt(n2, fld);
        Vec3<F> wh{w[0] / sigma, w[1] / sigma, w[2] / sigma};
        if (!(is_zero(wh[1]) && is_zero(wh[2]) && wh[0] == F(1))) {
            // Householder reflection sending wh to e1, then a z-flip to
            // restore det = +1.
            Vec3<F> n{wh[0] - F(1), wh[1], wh[2]};
            F nn = n[0] * n[0] + n[1] * n[1] + n[2] * n[2];
            Mat3<F> H = Mat3<F>::identity();
            for (int i = 0; i < 3; ++i)
                for (int j = 0; j < 3; ++j) H.m[i][j] -= F(2) * n[i] * n[j] / nn;
            Mat3<F> D = Mat3<F>::identity();
            D.m[2][2] = F(-1);
            Mat3<F> R0 = D * H;
            g = g.transform(R0);
            rot = R0 * rot;
        }
    }

    // 3. straighten: make the first component exactly u
    {
        Jet2<F> f1 = g.comp[0];
        F sigma = f1.coeff(1, 0);
        Jet2<F> fh = f1;  // nonlinear remainder
        fh.set_coeff(1, 0, F(0));
        F inv_sigma = F(1) / sigma;
        Jet2<F> User = inv_sigma * U;
        if (!fh.is_zero_jet()) {
            for (int it = 0; it < K; ++it)
                User = inv_sigma * (U - fh.compose(User, V));
        }
        MapGerm<F> gs(g.comp[0].compose(User, V), g.comp[1].compose(User, V),
                      g.comp[2].compose(User, V));
        if (!(gs.comp[0] == U))
            throw std::logic_error("reduce: straightening failed to produce first component u");
        g = gs;
        if (opt.track_changes) {
            Jet2<F> nu = src_u.compose(User, V);
            Jet2<F> nv = src_v.compose(User, V);
            src_u = nu;
            src_v = nv;
        }
    }

    // 4. 2-jet admissibility and the y-z rotation killing q's v^2 term
    {
        const Jet2<F>&p0 = g.comp[1], &q0 = g.comp[2];
        std::array<F, 3> P{p0.coeff(2, 0), p0.coeff(1, 1), p0.coeff(0, 2)};
        std::array<F, 3> Q{q0.coeff(2, 0), q0.coeff(1, 1), q0.coeff(0, 2)};
        bool v2_zero = is_zero(P[2]) && is_zero(Q[2]);
        F obstruction = P[1] * Q[2] - Q[1] * P[2];  // uv term survives any rotation
        if (v2_zero || !is_zero(obstruction)) {
            QuadOrbit orbit = classify_quadratic_orbit(P, Q);
            return ReduceError{ReduceError::Kind::unsupported_2jet,
                               std::string("2-jet not A-equivalent to (u, v^2, 0); quadratic "
                                           "G-orbit: ") +
                                   to_string(orbit),
                               orbit};
        }
        F norm2 = P[2] * P[2] + Q[2] * Q[2];
        F rho = reduce_sqrt(norm2, fld);
        F c = P[2] / rho, s = Q[2] / rho;
        if (!(is_zero(s) && c == F(1))) {
            Mat3<F> R1 = Mat3<F>::identity();
            R1.m[1][1] = c;
            R1.m[1][2] = s;
            R1.m[2][1] = -s;
            R1.m[2][2] = c;
            g = g.transform(R1);
            rot = R1 * rot;
        }
        if (!is_zero(g.comp[2].coeff(0, 2)) || !is_zero(g.comp[2].coeff(1, 1)))
            throw std::logic_error("reduce: rotation left forbidden quadratic terms in q");
    }

    // 5. degree-by-degree v-shears removing v-dependent terms of p
    {
        F rho = g.comp[1].coeff(0, 2);
        F two_rho = F(2) * rho;
        Jet2<F> p = g.comp[1];
        Jet2<F> total_v = V;  // v-component of the accumulated shear map
        bool any = false;
        for (int d = 2; d <= K; ++d) {
            Jet2<F> chi(K);
            bool nonzero = false;
            for (int j = 1; j <= d; ++j) {
                int i = d - j;
                if (i == 0 && j == 2) continue;
                const F& coe = p.coeff(i, j);
                if (is_zero(coe)) continue;
                chi.set_coeff(i, j - 1, -coe / two_rho);
                nonzero = true;
            }
            if (!nonzero) continue;
            Jet2<F> sv = V + chi;
            p = p.compose(U, sv);
            total_v = total_v.compose(U, sv);
            any = true;
        }
        if (any) {
            g.comp[1] = p;
            g.comp[2] = g.comp[2].compose(U, total_v);
            if (opt.track_changes) {
                Jet2<F> nu = src_u.compose(U, total_v);
                Jet2<F> nv = src_v.compose(U, total_v);
                src_u = nu;
                src_v = nv;
            }
        }
        for (int d = 2; d <= K; ++d)
            for (int j = 1; j <= d; ++j)
                if (!(d == 2 && j == 2) && !is_zero(g.comp[1].coeff(d - j, j)))
                    throw std::logic_error("reduce: shear left v-dependent terms in p");
    }

    ReducePipelineResult<F> out{g.comp[1], g.comp[2], g.comp[1].coeff(0, 2), src_u, src_v, rot};
    return out;
}

// Final v-scaling v -> lambda v with lambda^2 = 1/(2 rho): coefficient of
// u^i v^j picks up lambda^j. Maps a pipeline result into the tower.
inline ReduceResult finish_reduce(const ReducePipelineResult<Rat>& pr,
                                  const ReduceOptions& opt) {
    auto fld = AlgField::make();
    Alg rho = fld->embed(pr.rho);
    Alg lam = fld->sqrt(Alg(1) / (Alg(2) * rho));
    const int K = pr.p.order();
    auto scale_jet = [&](const Jet2<Rat>& j) {
        Jet2<Alg> r(K);
        Alg lam_pow[2] = {Alg(1), lam};
        for (int d = 0; d <= K; ++d)
            for (int jj = 0; jj <= d; ++jj) {
                const Rat& c = j.coeff(d - jj, jj);
                if (is_zero(c)) continue;
                Alg x = fld->embed(c) * lam_pow[jj % 2] *
                        int_pow(Alg(1) / (Alg(2) * rho), jj / 2);
                r.set_coeff(d - jj, jj, x);
            }
        return r;
    };
    ReduceResult res{NormalFormCoeffs<Alg>(K), fld, Jet2<Alg>(K), Jet2<Alg>(K),
                     pr.rot.template map<Alg>()};
    Jet2<Alg> p = scale_jet(pr.p), q = scale_jet(pr.q);
    if (opt.track_changes) {
        // source map gains a final v-scaling: (u, v) -> previous(u, lam*v)
        Jet2<Alg> su = pr.src_u.template map_coeffs<Alg>();
        Jet2<Alg> sv = pr.src_v.template map_coeffs<Alg>();
        Jet2<Alg> lu = Jet2<Alg>::var_u(K);
        Jet2<Alg> lv = lam * Jet2<Alg>::var_v(K);
        res.source_u = su.compose(lu, lv);
        res.source_v = sv.compose(lu, lv);
    }
    res.coeffs = NormalFormCoeffs<Alg>::from_pq(p, q);
    return res;
}

inline ReduceResult finish_reduce(const ReducePipelineResult<Alg>& pr,
                                  const ReduceOptions& opt,
                                  const std::shared_ptr<AlgField>& fld) {
    Alg lam = fld->sqrt(Alg(1) / (Alg(2) * pr.rho));
    const int K = pr.p.order();
    auto scale_jet = [&](const Jet2<Alg>& j) {
        Jet2<Alg> r(K);
        for (int d = 0; d <= K; ++d)
            for (int jj = 0; jj <= d; ++jj) {
                const Alg& c = j.coeff(d - jj, jj);
                if (is_zero(c)) continue;
                r.set_coeff(d - jj, jj, c * int_pow(lam, jj));
            }
        return r;
    };
    ReduceResult res{NormalFormCoeffs<Alg>(K), fld, Jet2<Alg>(K), Jet2<Alg>(K), pr.rot};
    Jet2<Alg> p = scale_jet(pr.p), q = scale_jet(pr.q);
    if (opt.track_changes) {
        Jet2<Alg> lu = Jet2<Alg>::var_u(K);
        Jet2<Alg> lv = lam * Jet2<Alg>::var_v(K);
        res.source_u = pr.src_u.compose(lu, lv);
        res.source_v = pr.src_v.compose(lu, lv);
    }
    res.coeffs = NormalFormCoeffs<Alg>::from_pq(p, q);
    return res;
}

inline void apply_canonical_sign(ReduceResult& res, const ReduceOptions& opt) {
    if (!opt.canonical_sign) return;
    auto n = res.coeffs.first_nonzero_n();
    if (!n) return;
    if (sgn(res.coeffs.a(*n + 1, 1)) > 0) return;
    res.coeffs = res.coeffs.v_flipped();
    if (opt.track_changes) {
        const int K = res.source_u.order();
        Jet2<Alg> lu = Jet2<Alg>::var_u(K);
        Jet2<Alg> lv = -Jet2<Alg>::var_v(K);
        res.source_u = res.source_u.compose(lu, lv);
        res.source_v = res.source_v.compose(lu, lv);
    }
}

}  // namespace detail

/// Reduce a corank-1 map-germ to the normal form (u, p, q), returning the
/// coefficient table together with the coordinate changes that realize it.
/// Runs over exact rationals and falls back to a quadratic tower when a
/// normalization requires an irrational square root.
inline ReduceOutcome reduce(const MapGerm<Rat>& g, const ReduceOptions& opt = {}) {
    try {
        auto pr = detail::reduce_pipeline<Rat>(g, opt, nullptr);
        if (auto* err = std::get_if<ReduceError>(&pr)) return *err;
        ReduceResult res =
            detail::finish_reduce(std::get<detail::ReducePipelineResult<Rat>>(pr), opt);
        detail::apply_canonical_sign(res, opt);
        return res;
    } catch (const detail::NeedsAlgebraicTower&) {
        auto fld = AlgField::make();
        MapGerm<Alg> ga = g.map_coeffs<Alg>();
        auto pr = detail::reduce_pipeline<Alg>(ga, opt, fld);
        if (auto* err = std::get_if<ReduceError>(&pr)) return *err;
        ReduceResult res =
            detail::finish_reduce(std::get<detail::ReducePipelineResult<Alg>>(pr), opt, fld);
        detail::apply_canonical_sign(res, opt);
        return res;
    }
}

}  // namespace singsurf
