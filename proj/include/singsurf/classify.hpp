#pragma once

#include <map>
#include <optional>
#include <string>

#include "singsurf/normal_form.hpp"

namespace singsurf {

enum class SignTag { plus, minus, none };

struct AType {
    enum class Family { S, B, C, F, out_of_family };
    Family family = Family::out_of_family;
    int k = 0;
    SignTag sign = SignTag::none;
    int blowup_n = 0;  // chart is Pi_{n+1}
    std::string reason;  // set for out_of_family

    bool in_family() const { return family != Family::out_of_family; }

    std::string label() const {
        switch (family) {
            case Family::S: return "S" + std::to_string(k) + suffix();
            case Family::B: return "B" + std::to_string(k) + suffix();
            case Family::C: return "C" + std::to_string(k) + suffix();
            case Family::F: return "F4";
            default: return "out_of_family(" + reason + ")";
        }
    }

private:
    std::string suffix() const {
        if (sign == SignTag::plus) return "+";
        if (sign == SignTag::minus) return "-";
        return "";
    }
};

inline bool operator==(const AType& a, const AType& b) {
    return a.family == b.family && a.k == b.k && a.sign == b.sign && a.blowup_n == b.blowup_n;
}

/// The c_l / xi_n data of the B-family recursion: u = gamma(v) with
/// gamma(v) = sum_{l>=2} c_l v^{2(l-1)} chosen so the odd v-part of
/// (dq/du)(gamma(v), v) vanishes; xi_n is then the v^{2n+1} coefficient of
/// q(gamma(v), v).
template <class F>
struct XiSequence {
    std::map<int, F> c;   // l -> c_l, l = 2..kmax
    std::map<int, F> xi;  // n -> xi_n, n = 2..kmax
};

/// Solve the c_l order by order and read off xi_n, for the branch with
/// a03 = 0, a21 != 0. Needs jet order >= 2*kmax + 1.
template <class F>
XiSequence<F> solve_xi(const NormalFormCoeffs<F>& c, int kmax) {
    const int K = c.order();
    if (2 * kmax + 1 > K)
        throw std::domain_error("solve_xi: insufficient jet data (need order >= " +
                                std::to_string(2 * kmax + 1) + ")");
    if (!is_zero(c.a(0, 3)) || is_zero(c.a(2, 1)))
        throw std::domain_error("solve_xi: requires a03 = 0 and a21 != 0");
    Jet2<F> q = c.q_jet();
    Jet2<F> dqu = q.derivative(Jet2<F>::Var::u);
    const int N = K;  // 1-jet order in v
    Jet1<F> gamma(N);
    Jet1<F> vjet = Jet1<F>::var(N);
    XiSequence<F> out;
    for (int m = 2; m <= kmax; ++m) {
        // coefficient [v^{2m-1}] of dqu(gamma + x v^{2(m-1)}, v) is affine in x
        auto residual_at = [&](const F& x) {
            Jet1<F> cand = gamma;
            cand.set_coeff(2 * (m - 1), x);
            Jet1<F> r = dqu.truncated(N).compose_curve(cand, vjet);
            return r.coeff(2 * m - 1);
        };
        F r0 = residual_at(F(0));
        F r1 = residual_at(F(1));
        F slope = r1 - r0;
        if (is_zero(slope)) throw std::logic_error("solve_xi: singular step in c_l solve");
        F cm = -r0 / slope;
        gamma.set_coeff(2 * (m - 1), cm);
        out.c[m] = cm;
        Jet1<F> qq = q.compose_curve(gamma, vjet);
        out.xi[m] = qq.coeff(2 * m + 1);
    }
    return out;
}

namespace detail {

template <class F>
SignTag sign_tag_from(const F& value) {
    return sgn(value) > 0 ? SignTag::plus : SignTag::minus;
}

}  // namespace detail

/// A-type of the germ per the condition table: S_k / B_k / C_k / F_4 with
/// sign suffixes, or out_of_family with the failing reason.
///
/// Sign convention (documented, not from the condition table): with the
/// canonical orientation a_{n+1,1} > 0, the suffix is the sign of
/// a03*a_{k+1,1} for S_k (odd k), xi_k for B_k, a13*a_{k,1} for C_k (odd k).
template <class F>
AType classify(const NormalFormCoeffs<F>& c_in) {
    const int K = c_in.order();
    // canonical orientation: make the first nonzero a_{i,1} positive
    NormalFormCoeffs<F> c = c_in;
    if (auto n = c.first_nonzero_n()) {
        if (sgn(c.a(*n + 1, 1)) < 0) c = c.v_flipped();
    }

    bool q_zero = true;
    for (int d = 2; d <= K && q_zero; ++d)
        for (int j = 0; j <= d; ++j)
            if (!is_zero(c.a(d - j, j))) {
                q_zero = false;
                break;
            }
    if (q_zero) return AType{AType::Family::out_of_family, 0, SignTag::none, 0, "degenerate"};

    auto nopt = c.first_nonzero_n();
    const F& a03 = c.a(0, 3);

    if (!is_zero(a03)) {
        // S-family: S_k iff a_{2,1} = ... = a_{k,1} = 0, a_{k+1,1} != 0
        if (!nopt)
            return AType{AType::Family::out_of_family, 0, SignTag::none, 0,
                         "a03 != 0 but all a_{i,1} vanish through order " + std::to_string(K) +
                             "; needs order >= " + std::to_string(K + 1)};
        int n = *nopt;
        int k = n;
        AType t{AType::Family::S, k, SignTag::none, n, ""};
        if (k % 2 == 1) t.sign = detail::sign_tag_from(a03 * c.a(k + 1, 1));
        return t;
    }

    if (!is_zero(c.a(2, 1))) {
        // B-family: first nonzero xi_k decides, xi_2 being the B2 discriminant
        int kcap = (K - 1) / 2;
        if (kcap < 2)
            return AType{AType::Family::out_of_family, 0, SignTag::none, 0,
                         "B-branch needs order >= 5"};
        for (int k = 2; k <= kcap; ++k) {
            auto xs = solve_xi(c, k);
            if (!is_zero(xs.xi.at(k)))
                return AType{AType::Family::B, k, detail::sign_tag_from(xs.xi.at(k)), 1, ""};
        }
        return AType{AType::Family::out_of_family, 0, SignTag::none, 0,
                     "B-branch: xi_2..xi_" + std::to_string(kcap) +
                         " all vanish; needs order >= " + std::to_string(2 * (kcap + 1) + 1)};
    }

    // a03 = 0, a21 = 0: C_k or F_4 via the first nonzero a_{k,1}
    if (!nopt)
        return AType{AType::Family::out_of_family, 0, SignTag::none, 0,
                     "a03 = a21 = 0 and all a_{i,1} vanish through order " + std::to_string(K) +
                         "; needs order >= " + std::to_string(K + 1)};
    int n = *nopt;
    int kq = n + 1;  // first nonzero a_{kq,1}
    const F& a13 = c.a(1, 3);
    if (!is_zero(a13)) {
        AType t{AType::Family::C, kq, SignTag::none, kq - 1, ""};
        if (kq % 2 == 1) t.sign = detail::sign_tag_from(a13 * c.a(kq, 1));
        return t;
    }
    if (kq == 3 && !is_zero(c.a(0, 5)))
        return AType{AType::Family::F, 4, SignTag::none, 2, ""};
    return AType{AType::Family::out_of_family, 0, SignTag::none, 0,
                 "a03 = a13 = 0 with a_{" + std::to_string(kq) +
                     ",1} leading: outside the S/B/C/F_4 families"};
}

/// Chart index for the blow-up: returns n with chart Pi_{n+1}
/// (S_k -> k, B_k -> 1, C_k -> k-1, F_4 -> 2).
inline int blowup_index(const AType& t) {
    if (!t.in_family()) throw std::domain_error("blowup_index: germ is out of family");
    switch (t.family) {
        case AType::Family::S: return t.k;
        case AType::Family::B: return 1;
        case AType::Family::C: return t.k - 1;
        default: return 2;  // F_4
    }
}

}  // namespace singsurf
