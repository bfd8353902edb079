#pragma once

#include <string>
#include <vector>

#include "singsurf/blowup.hpp"

namespace singsurf {

/// Direction in the target sphere, kept as an unnormalized exact vector;
/// all the height-function criteria are homogeneous in the direction, so
/// the missing normalization never enters a zero test.
template <class F>
struct Direction3 {
    F x, y, z;

    Direction3(F xx, F yy, F zz) : x(std::move(xx)), y(std::move(yy)), z(std::move(zz)) {
        if (is_zero(x) && is_zero(y) && is_zero(z))
            throw std::invalid_argument("Direction3: zero direction");
    }
    bool in_normal_plane() const { return is_zero(x); }
    Vec3<double> unit() const {
        double a = to_double(x), b = to_double(y), c = to_double(z);
        double n = std::sqrt(a * a + b * b + c * c);
        return {a / n, b / n, c / n};
    }
    /// The normal-plane direction hit by the leading normal at theta.
    static Direction3 from_theta(const NormalFormCoeffs<F>& c, int n,
                                 const ThetaDirection<F>& th) {
        auto ln = leading_normal(c, n, th);
        return Direction3(ln.scaled[0], ln.scaled[1], ln.scaled[2]);
    }
};

enum class HType { regular, A1, A2, A3, A4plus, D4plus };

inline const char* to_string(HType t) {
    switch (t) {
        case HType::regular: return "regular";
        case HType::A1: return "A1";
        case HType::A2: return "A2";
        case HType::A3: return "A3";
        case HType::A4plus: return "A4plus";
        default: return "D4plus";
    }
}

enum class HeightRoute { coefficient, geometric, combined };

struct HeightClass {
    HType atype = HType::regular;
    bool versal_H = false;
    bool versal_Hext = false;
    HeightRoute route = HeightRoute::coefficient;
    std::string clause;  // which condition row fired: "1", "2a", ...
};

inline bool operator==(const HeightClass& a, const HeightClass& b) {
    return a.atype == b.atype && a.versal_H == b.versal_H && a.versal_Hext == b.versal_Hext;
}

/// Jet of the height function <g, v> for g in normal form.
template <class F>
Jet2<F> height_jet(const NormalFormCoeffs<F>& c, const Direction3<F>& v) {
    Jet2<F> h = v.x * Jet2<F>::var_u(c.order());
    if (!is_zero(v.y)) h = h + v.y * c.p_jet();
    if (!is_zero(v.z)) h = h + v.z * c.q_jet();
    return h;
}

namespace detail {
template <class F>
HeightClass height_rows_principal_normal(const NormalFormCoeffs<F>& c, HeightRoute route) {
    // v0 = +-(0,0,1): rows (2b), (3b), (4b), (5); never versal
    HeightClass r;
    r.route = route;
    if (is_zero(c.a(2, 0))) {
        r.atype = HType::D4plus;
        r.clause = "5";
        return r;
    }
    if (!is_zero(c.a(0, 3))) {
        r.atype = HType::A2;
        r.clause = "2b";
        return r;
    }
    F t = c.a(2, 0) * c.a(0, 4) - F(3) * c.a(1, 2) * c.a(1, 2);
    if (!is_zero(t)) {
        r.atype = HType::A3;
        r.clause = "3b";
        return r;
    }
    r.atype = HType::A4plus;
    r.clause = "4b";
    return r;
}
}  // namespace detail

/// Exact A/D-type of the height function along v from the coefficient
/// condition rows, with the versality verdicts.
template <class F>
HeightClass classify_height(const NormalFormCoeffs<F>& c, const Direction3<F>& v) {
    HeightClass r;
    r.route = HeightRoute::coefficient;
    if (!v.in_normal_plane()) {
        r.atype = HType::regular;
        r.clause = "x != 0";
        return r;
    }
    const F &y0 = v.y, &z0 = v.z;
    if (is_zero(y0)) return detail::height_rows_principal_normal(c, HeightRoute::coefficient);
    F t1 = c.b(2) * y0 + c.a(2, 0) * z0;
    if (!is_zero(t1)) {
        r.atype = HType::A1;
        r.versal_H = r.versal_Hext = true;
        r.clause = "1";
        return r;
    }
    F t2 = c.b(3) * y0 + c.a(3, 0) * z0;
    if (!is_zero(t2)) {
        r.atype = HType::A2;
        r.versal_H = r.versal_Hext = true;
        r.clause = "2a";
        return r;
    }
    F t3 = c.b(4) * y0 * y0 + c.a(4, 0) * y0 * z0 - F(3) * c.a(2, 1) * c.a(2, 1) * z0 * z0;
    if (!is_zero(t3)) {
        r.atype = HType::A3;
        r.versal_H = r.versal_Hext = !is_zero(c.a(2, 0));
        r.clause = "3a";
        return r;
    }
    r.atype = HType::A4plus;
    r.clause = "4a";
    return r;
}

/// The geometric route: point type and ridge order over the singularity
/// decide the A-type along +-n(0,theta); at theta = pi/2 the refinement
/// delegates back to the coefficient rows (the combined route).
template <class F>
HeightClass classify_height_geometric(const NormalFormCoeffs<F>& c, const AType& t,
                                      const ThetaDirection<F>& th) {
    if (!t.in_family())
        throw std::domain_error("classify_height_geometric: germ is out of family");
    int n = t.blowup_n;
    if (th.is_pi_half()) return detail::height_rows_principal_normal(c, HeightRoute::combined);
    HeightClass r;
    r.route = HeightRoute::geometric;
    if (point_type(c, n, th) != PointType::parabolic) {
        r.atype = HType::A1;
        r.versal_H = r.versal_Hext = true;
        r.clause = "1a";
        return r;
    }
    switch (ridge_order(c, n, th)) {
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

/// --- splitting-lemma recognizer (independent oracle) ---

struct AdeType {
    enum class Kind { regular, A, D4plus, needs_higher_jet };
    Kind kind;
    int k = 0;  // for Kind::A

    bool matches(HType h) const {
        switch (h) {
            case HType::regular: return kind == Kind::regular;
            case HType::A1: return kind == Kind::A && k == 1;
            case HType::A2: return kind == Kind::A && k == 2;
            case HType::A3: return kind == Kind::A && k == 3;
            case HType::A4plus:
                return (kind == Kind::A && k >= 4) || kind == Kind::needs_higher_jet;
            default: return kind == Kind::D4plus;
        }
    }
};

inline std::string to_string(const AdeType& t) {
    switch (t.kind) {
        case AdeType::Kind::regular: return "regular";
        case AdeType::Kind::A: return "A" + std::to_string(t.k);
        case AdeType::Kind::D4plus: return "D4plus";
        default: return "needs_higher_jet";
    }
}

/// Recognize the A/D type of a function jet with zero constant term by a
/// formal splitting: degree-by-degree coordinate changes reduce the jet
/// to alpha w^2 + phi(s); the order of phi gives A_k with k = ord - 1.
template <class F>
AdeType ade_recognize(const Jet2<F>& f_in) {
    if (!is_zero(f_in.coeff(0, 0)))
        throw std::invalid_argument("ade_recognize: nonzero constant term");
    const int K = f_in.order();
    if (!is_zero(f_in.coeff(1, 0)) || !is_zero(f_in.coeff(0, 1)))
        return {AdeType::Kind::regular, 0};
    Jet2<F> f = f_in;
    F f20 = f.coeff(2, 0), f11 = f.coeff(1, 1), f02 = f.coeff(0, 2);
    F det = F(4) * f20 * f02 - f11 * f11;  // det of the Hessian (times 1)
    bool rank0 = is_zero(f20) && is_zero(f11) && is_zero(f02);
    if (rank0) return {AdeType::Kind::D4plus, 0};
    if (!is_zero(det)) return {AdeType::Kind::A, 1};
    // rank 1: make the quadratic part a multiple of v^2 (swap if needed)
    const Jet2<F> U = Jet2<F>::var_u(K), V = Jet2<F>::var_v(K);
    if (is_zero(f02)) {
        f = f.compose(V, U);
        std::swap(f20, f02);
    }
    F alpha = f.coeff(0, 2);
    // linear shear absorbing uv (and with it the u^2 term, by rank 1)
    if (!is_zero(f.coeff(1, 1))) {
        Jet2<F> sv = V - (f.coeff(1, 1) / (F(2) * alpha)) * U;
        f = f.compose(U, sv);
    }
    if (!is_zero(f.coeff(2, 0)) || !is_zero(f.coeff(1, 1)))
        throw std::logic_error("ade_recognize: rank-1 shear failed");
    // split off the v^2 block degree by degree
    for (int d = 3; d <= K; ++d) {
        Jet2<F> chi(K);
        bool any = false;
        for (int j = 1; j <= d; ++j) {
            int i = d - j;
            const F& coe = f.coeff(i, j);
            if (is_zero(coe)) continue;
            chi.set_coeff(i, j - 1, -coe / (F(2) * alpha));
            any = true;
        }
        if (!any) continue;
        f = f.compose(U, V + chi);
    }
    // now f = alpha v^2 + phi(u) + O(K+1)
    int ord = 0;
    for (int i = 3; i <= K && ord == 0; ++i)
        if (!is_zero(f.coeff(i, 0))) ord = i;
    if (ord == 0) return {AdeType::Kind::needs_higher_jet, 0};
    return {AdeType::Kind::A, ord - 1};
}

/// --- versality matrix ---

struct VersalityRank {
    int rank = 0;
    int cols = 0;
    bool full() const { return rank == cols; }
};

namespace detail {

template <class F>
int matrix_rank(std::vector<std::vector<F>> rows) {
    int rank = 0;
    if (rows.empty()) return 0;
    std::size_t cols = rows[0].size();
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < rows.size(); ++c) {
        std::size_t piv = r;
        while (piv < rows.size() && is_zero(rows[piv][c])) ++piv;
        if (piv == rows.size()) continue;
        std::swap(rows[piv], rows[r]);
        for (std::size_t i = r + 1; i < rows.size(); ++i) {
            if (is_zero(rows[i][c])) continue;
            F factor = rows[i][c] / rows[r][c];
            for (std::size_t j = c; j < cols; ++j) rows[i][j] -= factor * rows[r][j];
        }
        ++r;
        ++rank;
    }
    return rank;
}

template <class F>
std::vector<F> jet_row(const Jet2<F>& j, int max_deg) {
    std::vector<F> row;
    for (int d = 1; d <= max_deg; ++d)
        for (int jj = 0; jj <= d; ++jj) row.push_back(j.coeff(d - jj, jj));
    return row;
}

}  // namespace detail

/// Rank of the R^+/K-versality matrix of the unfolding at v = (0, y0, z0),
/// assembled as in the versality tables: rows are the two unfolding
/// derivatives plus all monomial multiples of the height partials, after
/// the quadratic shift; columns are the monomials of degree 1..(k+1) for
/// an A_k singularity. Applicable to A1/A2/A3 directions.
template <class F>
VersalityRank versality_matrix_rank(const NormalFormCoeffs<F>& c, const Direction3<F>& v) {
    if (!v.in_normal_plane())
        throw std::domain_error("versality_matrix_rank: direction is not singular");
    HeightClass hc = classify_height(c, v);
    int deg;
    switch (hc.atype) {
        case HType::A1: deg = 2; break;
        case HType::A2: deg = 3; break;
        case HType::A3: deg = 4; break;
        default:
            throw std::domain_error(
                "versality_matrix_rank: applicable only to A1/A2/A3 directions");
    }
    const int K = c.order();
    if (K < deg + 1) throw std::domain_error("versality_matrix_rank: jet order too small");
    const F &y0 = v.y, &z0 = v.z;
    Jet2<F> p = c.p_jet(), q = c.q_jet();
    Jet2<F> h = height_jet(c, v);
    Jet2<F> unfold2(K);  // second unfolding derivative (H_z or H_y)
    const Jet2<F> U = Jet2<F>::var_u(K), V = Jet2<F>::var_v(K);
    Jet2<F> su = U, sv = V;
    if (!is_zero(y0)) {
        // H_z = q - (z0/y0) p, shift v -> v - a21 z0 u^2/(2 y0)
        unfold2 = q - (z0 / y0) * p;
        sv = V - (c.a(2, 1) * z0 / (F(2) * y0)) * (U * U);
    } else {
        // v0 = +-(0,0,1): H_y = p, shift u -> u - a12 v^2/(2 a20)
        unfold2 = p;
        if (!is_zero(c.a(2, 0))) su = U - (c.a(1, 2) / (F(2) * c.a(2, 0))) * (V * V);
    }
    Jet2<F> hs = h.compose(su, sv);
    Jet2<F> u2 = unfold2.compose(su, sv);
    Jet2<F> hu = hs.derivative(Jet2<F>::Var::u).truncated(K);
    Jet2<F> hv = hs.derivative(Jet2<F>::Var::v).truncated(K);

    std::vector<std::vector<F>> rows;
    rows.push_back(detail::jet_row(U, deg));   // H_x = u
    rows.push_back(detail::jet_row(u2, deg));  // H_z (or H_y)
    for (int md = 0; md <= deg - 1; ++md)
        for (int mj = 0; mj <= md; ++mj) {
            Jet2<F> mono(K);
            mono.set_coeff(md - mj, mj, F(1));
            rows.push_back(detail::jet_row(mono * hu, deg));
            rows.push_back(detail::jet_row(mono * hv, deg));
        }
    VersalityRank out;
    out.cols = (deg + 1) * (deg + 2) / 2 - 1;
    out.rank = detail::matrix_rank(std::move(rows));
    return out;
}

}  // namespace singsurf
