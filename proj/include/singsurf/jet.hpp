#pragma once

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "singsurf/rational.hpp"

namespace singsurf {

/// Truncated univariate polynomial (jet in one variable t) over a field F.
/// Coefficient of t^d at index d; everything beyond `order` is discarded.
template <class F>
class Jet1 {
public:
    Jet1() : order_(0), c_(1, F(0)) {}
    explicit Jet1(int order) : order_(order), c_(order + 1, F(0)) {
        if (order < 0) throw std::invalid_argument("Jet1: negative order");
    }

    static Jet1 var(int order) {
        Jet1 j(order);
        if (order >= 1) j.c_[1] = F(1);
        return j;
    }
    static Jet1 constant(int order, const F& v) {
        Jet1 j(order);
        j.c_[0] = v;
        return j;
    }

    int order() const { return order_; }
    const F& coeff(int d) const {
        static const F zero(0);
        return (d < 0 || d > order_) ? zero : c_[d];
    }
    void set_coeff(int d, const F& v) {
        if (d < 0 || d > order_) throw std::out_of_range("Jet1::set_coeff");
        c_[d] = v;
    }

    bool is_zero_jet() const {
        for (const auto& x : c_)
            if (!is_zero(x)) return false;
        return true;
    }
    /// Degree of the lowest nonzero term; order()+1 when the jet vanishes.
    int low_degree() const {
        for (int d = 0; d <= order_; ++d)
            if (!is_zero(c_[d])) return d;
        return order_ + 1;
    }

    Jet1 truncated(int new_order) const {
        Jet1 r(new_order);
        for (int d = 0; d <= std::min(order_, new_order); ++d) r.c_[d] = c_[d];
        return r;
    }

    friend Jet1 operator+(const Jet1& a, const Jet1& b) {
        require_same_order(a, b);
        Jet1 r = a;
        for (int d = 0; d <= a.order_; ++d) r.c_[d] += b.c_[d];
        return r;
    }
    friend Jet1 operator-(const Jet1& a, const Jet1& b) {
        require_same_order(a, b);
        Jet1 r = a;
        for (int d = 0; d <= a.order_; ++d) r.c_[d] -= b.c_[d];
        return r;
    }
    Jet1 operator-() const {
        Jet1 r = *this;
        for (auto& x : r.c_) x = -x;
        return r;
    }
    friend Jet1 operator*(const Jet1& a, const Jet1& b) {
        require_same_order(a, b);
        Jet1 r(a.order_);
        for (int i = 0; i <= a.order_; ++i) {
            if (is_zero(a.c_[i])) continue;
            for (int j = 0; j + i <= a.order_; ++j) {
                if (is_zero(b.c_[j])) continue;
                r.c_[i + j] += a.c_[i] * b.c_[j];
            }
        }
        return r;
    }
    friend Jet1 operator*(const F& s, const Jet1& a) {
        Jet1 r = a;
        for (auto& x : r.c_) x = s * x;
        return r;
    }
    friend bool operator==(const Jet1& a, const Jet1& b) {
        return a.order_ == b.order_ && (a - b).is_zero_jet();
    }

    Jet1 derivative() const {
        if (order_ < 1) throw std::domain_error("Jet1::derivative: order < 1");
        Jet1 r(order_ - 1);
        for (int d = 1; d <= order_; ++d) r.c_[d - 1] = F(d) * c_[d];
        return r;
    }

    /// Reciprocal of a unit (nonzero constant term), by geometric series.
    Jet1 reciprocal() const {
        if (is_zero(c_[0])) throw std::domain_error("Jet1::reciprocal: not a unit");
        Jet1 r(order_);
        F inv0 = F(1) / c_[0];
        r.c_[0] = inv0;
        for (int d = 1; d <= order_; ++d) {
            F acc(0);
            for (int k = 1; k <= d; ++k) acc += c_[k] * r.c_[d - k];
            r.c_[d] = -inv0 * acc;
        }
        return r;
    }

    /// Substitute another jet (zero constant term required).
    Jet1 compose(const Jet1& inner) const {
        require_same_order(*this, inner);
        if (!is_zero(inner.c_[0]))
            throw std::invalid_argument("Jet1::compose: inner jet has constant term");
        Jet1 r = constant(order_, c_[order_]);
        for (int d = order_ - 1; d >= 0; --d) {  // Horner
            r = r * inner;
            r.c_[0] += c_[d];
        }
        return r;
    }

    double eval_d(double t) const {
        double acc = 0;
        for (int d = order_; d >= 0; --d) acc = acc * t + to_double(c_[d]);
        return acc;
    }

    long double eval_ld(long double t) const {
        long double acc = 0;
        for (int d = order_; d >= 0; --d) acc = acc * t + (long double)to_double(c_[d]);
        return acc;
    }

    template <class G>
    Jet1<G> map_coeffs() const {
        Jet1<G> r(order_);
        for (int d = 0; d <= order_; ++d) r.set_coeff(d, G(c_[d]));
        return r;
    }

private:
    static void require_same_order(const Jet1& a, const Jet1& b) {
        if (a.order_ != b.order_) throw std::invalid_argument("Jet1: order mismatch");
    }
    int order_;
    std::vector<F> c_;
};

/// Truncated bivariate polynomial (jet in u, v) over a field F.
/// Dense triangular storage by total degree; absent coefficients are zero,
/// and every operation truncates its result to the common order K.
template <class F>
class Jet2 {
public:
    Jet2() : order_(0), c_(1, F(0)) {}
    explicit Jet2(int order) : order_(order), c_(size_for(order), F(0)) {
        if (order < 0) throw std::invalid_argument("Jet2: negative order");
    }

    static Jet2 var_u(int order) {
        Jet2 j(order);
        if (order >= 1) j.at(1, 0) = F(1);
        return j;
    }
    static Jet2 var_v(int order) {
        Jet2 j(order);
        if (order >= 1) j.at(0, 1) = F(1);
        return j;
    }
    static Jet2 constant(int order, const F& v) {
        Jet2 j(order);
        j.at(0, 0) = v;
        return j;
    }

    int order() const { return order_; }

    const F& coeff(int i, int j) const {
        static const F zero(0);
        if (i < 0 || j < 0 || i + j > order_) return zero;
        return c_[index(i, j)];
    }
    void set_coeff(int i, int j, const F& v) {
        if (i < 0 || j < 0 || i + j > order_) throw std::out_of_range("Jet2::set_coeff");
        c_[index(i, j)] = v;
    }

    bool is_zero_jet() const {
        for (const auto& x : c_)
            if (!is_zero(x)) return false;
        return true;
    }
    int low_degree() const {
        for (int d = 0; d <= order_; ++d)
            for (int j = 0; j <= d; ++j)
                if (!is_zero(coeff(d - j, j))) return d;
        return order_ + 1;
    }

    Jet2 truncated(int new_order) const {
        Jet2 r(new_order);
        int m = std::min(order_, new_order);
        for (int d = 0; d <= m; ++d)
            for (int j = 0; j <= d; ++j) r.at(d - j, j) = coeff(d - j, j);
        return r;
    }

    friend Jet2 operator+(const Jet2& a, const Jet2& b) {
        require_same_order(a, b);
        Jet2 r = a;
        for (std::size_t k = 0; k < r.c_.size(); ++k) r.c_[k] += b.c_[k];
        return r;
    }
    friend Jet2 operator-(const Jet2& a, const Jet2& b) {
        require_same_order(a, b);
        Jet2 r = a;
        for (std::size_t k = 0; k < r.c_.size(); ++k) r.c_[k] -= b.c_[k];
        return r;
    }
    Jet2 operator-() const {
        Jet2 r = *this;
        for (auto& x : r.c_) x = -x;
        return r;
    }
    friend Jet2 operator*(const Jet2& a, const Jet2& b) {
        require_same_order(a, b);
        const int K = a.order_;
        Jet2 r(K);
        for (int d1 = 0; d1 <= K; ++d1) {
            for (int j1 = 0; j1 <= d1; ++j1) {
                const F& x = a.coeff(d1 - j1, j1);
                if (is_zero(x)) continue;
                for (int d2 = 0; d2 + d1 <= K; ++d2) {
                    for (int j2 = 0; j2 <= d2; ++j2) {
                        const F& y = b.coeff(d2 - j2, j2);
                        if (is_zero(y)) continue;
                        r.at(d1 + d2 - j1 - j2, j1 + j2) += x * y;
                    }
                }
            }
        }
        return r;
    }
    friend Jet2 operator*(const F& s, const Jet2& a) {
        Jet2 r = a;
        for (auto& x : r.c_) x = s * x;
        return r;
    }
    friend bool operator==(const Jet2& a, const Jet2& b) {
        return a.order_ == b.order_ && (a - b).is_zero_jet();
    }
    friend bool operator!=(const Jet2& a, const Jet2& b) { return !(a == b); }

    enum class Var { u, v };

    Jet2 derivative(Var var) const {
        if (order_ < 1) throw std::domain_error("Jet2::derivative: order < 1");
        Jet2 r(order_ - 1);
        for (int d = 1; d <= order_; ++d) {
            for (int j = 0; j <= d; ++j) {
                int i = d - j;
                const F& x = coeff(i, j);
                if (is_zero(x)) continue;
                if (var == Var::u && i >= 1) r.at(i - 1, j) += F(i) * x;
                if (var == Var::v && j >= 1) r.at(i, j - 1) += F(j) * x;
            }
        }
        return r;
    }

    /// f(su(u,v), sv(u,v)); both substituted jets need zero constant term.
    Jet2 compose(const Jet2& su, const Jet2& sv) const {
        require_same_order(*this, su);
        require_same_order(*this, sv);
        if (!is_zero(su.coeff(0, 0)) || !is_zero(sv.coeff(0, 0)))
            throw std::invalid_argument("Jet2::compose: substitution has constant term");
        const int K = order_;
        // Horner in v of u-Horner rows: f = sum_j v^j f_j(u).
        Jet2 r(K);
        for (int j = K; j >= 0; --j) {
            Jet2 row(K);
            bool row_started = false;
            for (int i = K - j; i >= 0; --i) {
                if (row_started) row = row * su;
                if (!is_zero(coeff(i, j))) {
                    row.at(0, 0) += coeff(i, j);
                    row_started = true;
                }
            }
            if (!r.is_zero_jet()) r = r * sv;
            if (row_started) r = r + row;
        }
        return r;
    }

    /// f(a(t), b(t)) for curves a, b with zero constant term.
    Jet1<F> compose_curve(const Jet1<F>& a, const Jet1<F>& b) const {
        if (a.order() != b.order())
            throw std::invalid_argument("Jet2::compose_curve: order mismatch");
        if (!is_zero(a.coeff(0)) || !is_zero(b.coeff(0)))
            throw std::invalid_argument("Jet2::compose_curve: curve has constant term");
        const int N = a.order();
        Jet1<F> r(N);
        for (int j = order_; j >= 0; --j) {
            Jet1<F> row(N);
            bool row_started = false;
            for (int i = order_ - j; i >= 0; --i) {
                if (row_started) row = row * a;
                if (!is_zero(coeff(i, j))) {
                    row.set_coeff(0, row.coeff(0) + coeff(i, j));
                    row_started = true;
                }
            }
            r = r * b + row;
        }
        return r;
    }

    /// Reciprocal of a unit jet, geometric series up to order K.
    Jet2 reciprocal() const {
        if (is_zero(coeff(0, 0))) throw std::domain_error("Jet2::reciprocal: not a unit");
        F inv0 = F(1) / coeff(0, 0);
        Jet2 m = inv0 * *this;  // 1 + nilpotent part
        m.at(0, 0) = F(0);
        Jet2 acc = constant(order_, F(1));
        Jet2 pw = constant(order_, F(1));
        for (int d = 1; d <= order_; ++d) {
            pw = pw * m;
            if (pw.is_zero_jet()) break;
            acc = (d % 2 == 1) ? acc - pw : acc + pw;
        }
        return inv0 * acc;
    }

    double eval_d(double u, double v) const {
        // Horner in v, then in u per row.
        double acc = 0;
        for (int j = order_; j >= 0; --j) {
            double row = 0;
            for (int i = order_ - j; i >= 0; --i) row = row * u + to_double(coeff(i, j));
            acc = acc * v + row;
        }
        return acc;
    }

    long double eval_ld(long double u, long double v) const {
        long double acc = 0;
        for (int j = order_; j >= 0; --j) {
            long double row = 0;
            for (int i = order_ - j; i >= 0; --i)
                row = row * u + (long double)to_double(coeff(i, j));
            acc = acc * v + row;
        }
        return acc;
    }

    F eval_exact(const F& u, const F& v) const {
        F acc(0);
        for (int j = order_; j >= 0; --j) {
            F row(0);
            for (int i = order_ - j; i >= 0; --i) row = row * u + coeff(i, j);
            acc = acc * v + row;
        }
        return acc;
    }

    template <class G>
    Jet2<G> map_coeffs() const {
        Jet2<G> r(order_);
        for (int d = 0; d <= order_; ++d)
            for (int j = 0; j <= d; ++j) r.set_coeff(d - j, j, G(coeff(d - j, j)));
        return r;
    }

    std::string to_string() const {
        std::string s;
        for (int d = 0; d <= order_; ++d) {
            for (int j = 0; j <= d; ++j) {
                int i = d - j;
                if (is_zero(coeff(i, j))) continue;
                if (!s.empty()) s += " + ";
                s += "(" + to_str(coeff(i, j)) + ")";
                if (i > 0) s += "*u^" + std::to_string(i);
                if (j > 0) s += "*v^" + std::to_string(j);
            }
        }
        return s.empty() ? "0" : s;
    }

private:
    static std::size_t size_for(int order) {
        return std::size_t(order + 1) * std::size_t(order + 2) / 2;
    }
    static std::size_t index(int i, int j) {
        int d = i + j;
        return std::size_t(d) * std::size_t(d + 1) / 2 + std::size_t(j);
    }
    F& at(int i, int j) { return c_[index(i, j)]; }
    static void require_same_order(const Jet2& a, const Jet2& b) {
        if (a.order_ != b.order_) throw std::invalid_argument("Jet2: order mismatch");
    }

    int order_;
    std::vector<F> c_;
};

using Jet2Q = Jet2<Rat>;
using Jet1Q = Jet1<Rat>;

}  // namespace singsurf
