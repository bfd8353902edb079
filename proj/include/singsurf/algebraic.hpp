#pragma once

#include <cassert>
#include <cmath>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "singsurf/rational.hpp"

namespace singsurf {

class AlgField;
class Alg;
namespace detail {
std::optional<Alg> try_sqrt_at(const std::shared_ptr<AlgField>& fld, const Alg& a, int k);
}

/// Element of a real tower Q(sqrt(d1))(sqrt(d2))... where each radicand
/// d_k is a positive element of the level-(k-1) field. A value of level L
/// is stored as 2^L rational coordinates over the basis of radical
/// products (bit i of the index selects the sqrt adjoined at level i+1).
/// Level-0 values are plain rationals and need no field object.
///
/// Values belonging to different towers must not be mixed; a level-0
/// value combines with anything. Extending a tower while another thread
/// computes with its values is not supported.
class Alg {
public:
    Alg() : c_(1, Rat(0)) {}
    Alg(int v) : c_(1, Rat(v)) {}
    Alg(long v) : c_(1, Rat(v)) {}
    explicit Alg(const Rat& v) : c_(1, v) {}

    int level() const { return lev_; }
    const std::vector<Rat>& coords() const { return c_; }
    bool is_rational() const { return lev_ == 0; }
    const Rat& rational() const {
        if (lev_ != 0) throw std::domain_error("Alg: value is not rational");
        return c_[0];
    }
    const std::shared_ptr<AlgField>& field() const { return fld_; }

    Alg operator-() const {
        Alg r = *this;
        for (auto& x : r.c_) x = -x;
        return r;
    }
    Alg& operator+=(const Alg& o) { return *this = *this + o; }
    Alg& operator-=(const Alg& o) { return *this = *this - o; }
    Alg& operator*=(const Alg& o) { return *this = *this * o; }

    friend Alg operator+(const Alg& a, const Alg& b);
    friend Alg operator-(const Alg& a, const Alg& b);
    friend Alg operator*(const Alg& a, const Alg& b);
    friend Alg operator/(const Alg& a, const Alg& b);
    friend bool operator==(const Alg& a, const Alg& b);
    friend bool operator!=(const Alg& a, const Alg& b) { return !(a == b); }

    friend bool is_zero(const Alg& a) {
        for (const auto& x : a.c_)
            if (sgn(x) != 0) return false;
        return true;
    }

    friend int sgn(const Alg& a);
    friend double to_double(const Alg& a);
    friend std::string to_str(const Alg& a);
    friend std::optional<Alg> try_sqrt(const Alg& a);
    friend std::optional<Alg> detail::try_sqrt_at(const std::shared_ptr<AlgField>& fld, const Alg& a, int k);
    friend class AlgField;

private:
    std::shared_ptr<AlgField> fld_;  // null iff lev_ == 0
    int lev_ = 0;
    std::vector<Rat> c_;  // size == 1 << lev_

    void prune();
    static void check_compatible(const Alg& a, const Alg& b);
    Alg lifted(int lev) const;
};

/// The tower context: one radicand per level. Created empty; reduce()
/// adjoins square roots as normalizations require them.
class AlgField : public std::enable_shared_from_this<AlgField> {
public:
    static std::shared_ptr<AlgField> make() { return std::shared_ptr<AlgField>(new AlgField()); }

    int levels() const { return static_cast<int>(rads_.size()); }

    /// Radicand of level k (1-based); an Alg of level k-1.
    const Alg& radicand(int k) const { return rads_.at(k - 1); }
    double radicand_sqrt_d(int k) const { return rad_sqrt_d_.at(k - 1); }

    /// Returns an element whose square is x, adjoining a new radical only
    /// when x has no square root in the current tower. x must be positive.
    Alg sqrt(const Alg& x);

    /// Embed a value into this tower (level stays 0).
    Alg embed(const Rat& r) {
        Alg a(r);
        a.fld_ = shared_from_this();
        return a;
    }

private:
    AlgField() = default;
    std::vector<Alg> rads_;
    std::vector<double> rad_sqrt_d_;
    friend class Alg;
};

namespace detail {

// Span arithmetic: spans have length 1<<lev and live over the tower fld.
inline void span_mul(const AlgField* fld, int lev, const Rat* a, const Rat* b, Rat* out);

inline void span_addmul(const AlgField* fld, int lev, const Rat* a, const Rat* b, Rat* out) {
    // out += a*b
    const std::size_t n = std::size_t(1) << lev;
    std::vector<Rat> tmp(n, Rat(0));
    span_mul(fld, lev, a, b, tmp.data());
    for (std::size_t i = 0; i < n; ++i) out[i] += tmp[i];
}

inline bool span_is_zero(const Rat* a, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i)
        if (sgn(a[i]) != 0) return false;
    return true;
}

inline void span_mul(const AlgField* fld, int lev, const Rat* a, const Rat* b, Rat* out) {
    if (lev == 0) {
        out[0] = a[0] * b[0];
        return;
    }
    const std::size_t h = std::size_t(1) << (lev - 1);
    const Rat *alo = a, *ahi = a + h, *blo = b, *bhi = b + h;
    const bool ahz = span_is_zero(ahi, h), bhz = span_is_zero(bhi, h);
    const bool alz = span_is_zero(alo, h), blz = span_is_zero(blo, h);
    // lo = alo*blo + ahi*bhi*d ; hi = alo*bhi + ahi*blo
    if (!alz && !blz) span_addmul(fld, lev - 1, alo, blo, out);
    if (!ahz && !bhz) {
        std::vector<Rat> t(h, Rat(0));
        span_mul(fld, lev - 1, ahi, bhi, t.data());
        const Alg& d = fld->radicand(lev);
        std::vector<Rat> dpad(h, Rat(0));
        for (std::size_t i = 0; i < d.coords().size(); ++i) dpad[i] = d.coords()[i];
        span_addmul(fld, lev - 1, t.data(), dpad.data(), out);
    }
    if (!alz && !bhz) span_addmul(fld, lev - 1, alo, bhi, out + h);
    if (!ahz && !blz) span_addmul(fld, lev - 1, ahi, blo, out + h);
}

inline int span_sgn(const AlgField* fld, int lev, const Rat* a) {
    if (lev == 0) return sgn(a[0]);
    const std::size_t h = std::size_t(1) << (lev - 1);
    const bool hz = span_is_zero(a + h, h);
    const bool lz = span_is_zero(a, h);
    if (hz) return span_sgn(fld, lev - 1, a);
    if (lz) return span_sgn(fld, lev - 1, a + h);
    int slo = span_sgn(fld, lev - 1, a);
    int shi = span_sgn(fld, lev - 1, a + h);
    if (slo == shi) return slo;
    // sign of lo + hi*sqrt(d) with lo, hi of opposite sign:
    // agrees with sign(lo) iff lo^2 > hi^2*d.
    const std::size_t n = std::size_t(1) << (lev - 1);
    std::vector<Rat> lo2(n, Rat(0)), hi2(n, Rat(0)), hid(n, Rat(0));
    span_mul(fld, lev - 1, a, a, lo2.data());
    span_mul(fld, lev - 1, a + h, a + h, hi2.data());
    const Alg& d = fld->radicand(lev);
    std::vector<Rat> dpad(n, Rat(0));
    for (std::size_t i = 0; i < d.coords().size(); ++i) dpad[i] = d.coords()[i];
    span_mul(fld, lev - 1, hi2.data(), dpad.data(), hid.data());
    for (std::size_t i = 0; i < n; ++i) lo2[i] -= hid[i];
    int s = span_sgn(fld, lev - 1, lo2.data());
    return s == 0 ? 0 : (s > 0 ? slo : shi);
}

inline void span_inv(const AlgField* fld, int lev, const Rat* a, Rat* out) {
    if (lev == 0) {
        if (sgn(a[0]) == 0) throw std::domain_error("Alg: division by zero");
        out[0] = Rat(1) / a[0];
        return;
    }
    const std::size_t h = std::size_t(1) << (lev - 1);
    if (span_is_zero(a + h, h)) {
        span_inv(fld, lev - 1, a, out);
        for (std::size_t i = 0; i < h; ++i) out[h + i] = Rat(0);
        return;
    }
    // 1/(lo + hi*s) = (lo - hi*s)/(lo^2 - hi^2*d)
    std::vector<Rat> lo2(h, Rat(0)), hi2(h, Rat(0)), norm(h, Rat(0)), ninv(h, Rat(0));
    span_mul(fld, lev - 1, a, a, lo2.data());
    span_mul(fld, lev - 1, a + h, a + h, hi2.data());
    const Alg& d = fld->radicand(lev);
    std::vector<Rat> dpad(h, Rat(0));
    for (std::size_t i = 0; i < d.coords().size(); ++i) dpad[i] = d.coords()[i];
    span_mul(fld, lev - 1, hi2.data(), dpad.data(), norm.data());
    for (std::size_t i = 0; i < h; ++i) norm[i] = lo2[i] - norm[i];
    if (span_is_zero(norm.data(), h))
        throw std::domain_error("Alg: division by zero (vanishing norm)");
    span_inv(fld, lev - 1, norm.data(), ninv.data());
    span_mul(fld, lev - 1, a, ninv.data(), out);
    std::vector<Rat> t(h, Rat(0));
    span_mul(fld, lev - 1, a + h, ninv.data(), t.data());
    for (std::size_t i = 0; i < h; ++i) out[h + i] = -t[i];
}

}  // namespace detail

inline void Alg::prune() {
    while (lev_ > 0) {
        const std::size_t h = std::size_t(1) << (lev_ - 1);
        if (!detail::span_is_zero(c_.data() + h, h)) break;
        c_.resize(h);
        --lev_;
    }
    if (lev_ == 0) fld_.reset();
}

inline void Alg::check_compatible(const Alg& a, const Alg& b) {
    if (a.fld_ && b.fld_ && a.fld_ != b.fld_)
        throw std::invalid_argument("Alg: mixing values from different towers");
}

inline Alg Alg::lifted(int lev) const {
    Alg r = *this;
    r.lev_ = lev;
    r.c_.resize(std::size_t(1) << lev, Rat(0));
    return r;
}

inline Alg operator+(const Alg& a, const Alg& b) {
    Alg::check_compatible(a, b);
    int lev = std::max(a.lev_, b.lev_);
    Alg r = a.lifted(lev);
    r.fld_ = a.fld_ ? a.fld_ : b.fld_;
    Alg bb = b.lifted(lev);
    for (std::size_t i = 0; i < r.c_.size(); ++i) r.c_[i] += bb.c_[i];
    r.prune();
    return r;
}

inline Alg operator-(const Alg& a, const Alg& b) {
    Alg::check_compatible(a, b);
    int lev = std::max(a.lev_, b.lev_);
    Alg r = a.lifted(lev);
    r.fld_ = a.fld_ ? a.fld_ : b.fld_;
    Alg bb = b.lifted(lev);
    for (std::size_t i = 0; i < r.c_.size(); ++i) r.c_[i] -= bb.c_[i];
    r.prune();
    return r;
}

inline Alg operator*(const Alg& a, const Alg& b) {
    Alg::check_compatible(a, b);
    int lev = std::max(a.lev_, b.lev_);
    Alg aa = a.lifted(lev), bb = b.lifted(lev);
    Alg r;
    r.fld_ = a.fld_ ? a.fld_ : b.fld_;
    r.lev_ = lev;
    r.c_.assign(std::size_t(1) << lev, Rat(0));
    detail::span_mul(r.fld_.get(), lev, aa.c_.data(), bb.c_.data(), r.c_.data());
    r.prune();
    return r;
}

inline Alg operator/(const Alg& a, const Alg& b) {
    Alg::check_compatible(a, b);
    int lev = std::max(a.lev_, b.lev_);
    Alg bb = b.lifted(lev);
    Alg binv;
    binv.fld_ = a.fld_ ? a.fld_ : b.fld_;
    binv.lev_ = lev;
    binv.c_.assign(std::size_t(1) << lev, Rat(0));
    detail::span_inv(binv.fld_.get(), lev, bb.c_.data(), binv.c_.data());
    binv.prune();
    return a * binv;
}

inline bool operator==(const Alg& a, const Alg& b) { return is_zero(a - b); }

inline int sgn(const Alg& a) {
    return detail::span_sgn(a.fld_.get(), a.lev_, a.c_.data());
}

inline double to_double(const Alg& a) {
    if (a.lev_ == 0) return to_double(a.c_[0]);
    std::vector<double> acc(a.c_.size());
    for (std::size_t i = 0; i < a.c_.size(); ++i) acc[i] = to_double(a.c_[i]);
    std::size_t n = a.c_.size();
    for (int k = a.lev_; k >= 1; --k) {
        const double s = a.fld_->radicand_sqrt_d(k);
        n >>= 1;
        for (std::size_t i = 0; i < n; ++i) acc[i] += acc[n + i] * s;
    }
    return acc[0];
}

inline std::string to_str(const Alg& a) {
    if (a.lev_ == 0) return to_str(a.c_[0]);
    const std::size_t h = a.c_.size() / 2;
    Alg lo = a, hi = a;
    lo.c_.resize(h);
    lo.lev_ = a.lev_ - 1;
    lo.prune();
    hi.c_.assign(a.c_.begin() + h, a.c_.end());
    hi.lev_ = a.lev_ - 1;
    hi.prune();
    std::string rad = "sqrt(" + to_str(a.fld_->radicand(a.lev_)) + ")";
    if (is_zero(hi)) return to_str(lo);
    std::string hs = "(" + to_str(hi) + ")*" + rad;
    if (is_zero(lo)) return hs;
    return "(" + to_str(lo) + ")+" + hs;
}

inline std::optional<Alg> try_sqrt(const Alg& a) {
    int s = sgn(a);
    if (s < 0) return std::nullopt;
    if (s == 0) {
        Alg z;
        z.fld_ = a.field();
        return z;
    }
    // The root may involve radicals the (pruned) value does not mention;
    // search the whole tower.
    return detail::try_sqrt_at(a.fld_, a, a.fld_ ? a.fld_->levels() : 0);
}

inline std::optional<Alg> detail::try_sqrt_at(const std::shared_ptr<AlgField>& fld, const Alg& a,
                                              int k) {
    int s = sgn(a);
    if (s < 0) return std::nullopt;
    if (s == 0) {
        Alg z;
        z.fld_ = a.field();
        return z;
    }
    if (k == 0) {
        if (a.lev_ != 0) return std::nullopt;
        auto r = try_sqrt(a.c_[0]);
        if (!r) return std::nullopt;
        Alg out{*r};
        out.fld_ = fld;
        if (out.lev_ == 0 && is_zero(out.c_[0])) out.fld_.reset();
        return out;
    }
    Alg av = a.lifted(k);
    const std::size_t h = av.c_.size() / 2;
    Alg lo = av, hi = av;
    lo.c_.resize(h);
    lo.lev_ = k - 1;
    lo.prune();
    hi.c_.assign(av.c_.begin() + h, av.c_.end());
    hi.lev_ = k - 1;
    hi.prune();
    const Alg& d = fld->radicand(k);
    auto at_level = [&](const Alg& lopart, const Alg& hipart) {
        // assemble lo' + hi'*sqrt(d_k) inside the same tower
        Alg r = lopart.lifted(k);
        r.fld_ = fld;
        Alg hp = hipart.lifted(k - 1);
        for (std::size_t i = 0; i < h; ++i) r.c_[h + i] = hp.c_[i];
        r.prune();
        return r;
    };
    if (is_zero(hi)) {
        if (auto r = try_sqrt_at(fld, lo, k - 1)) {
            if (sgn(*r) >= 0) return at_level(*r, Alg(0));
        }
        // sqrt(lo) may equal t*sqrt(d_k): lo = t^2 * d_k
        Alg q = lo / d;
        if (sgn(q) > 0) {
            if (auto t = try_sqrt_at(fld, q, k - 1)) return at_level(Alg(0), *t);
        }
        return std::nullopt;
    }
    // sqrt(lo + hi*s) = x + y*s needs N = lo^2 - hi^2*d_k a square below.
    Alg N = lo * lo - hi * hi * d;
    auto m = try_sqrt_at(fld, N, k - 1);
    if (!m) return std::nullopt;
    for (int pick = 0; pick < 2; ++pick) {
        Alg x2 = (pick == 0) ? (lo + *m) / Alg(2) : (lo - *m) / Alg(2);
        if (sgn(x2) <= 0) continue;
        auto x = try_sqrt_at(fld, x2, k - 1);
        if (!x || is_zero(*x)) continue;
        Alg y = hi / (Alg(2) * *x);
        Alg cand = at_level(*x, y);
        if (sgn(cand) > 0 && cand * cand == a) return cand;
        cand = -cand;
        if (sgn(cand) > 0 && cand * cand == a) return cand;
    }
    return std::nullopt;
}

inline Alg AlgField::sqrt(const Alg& x) {
    if (sgn(x) <= 0) throw std::domain_error("AlgField::sqrt: radicand must be positive");
    if (x.field() && x.field().get() != this)
        throw std::invalid_argument("AlgField::sqrt: value from another tower");
    Alg xx = x;
    xx.fld_ = shared_from_this();
    if (auto r = try_sqrt(xx)) return *r;
    if (levels() >= 6)
        throw std::domain_error("AlgField::sqrt: tower depth limit exceeded");
    Alg rad = xx.lifted(levels());
    rads_.push_back(rad);
    rad_sqrt_d_.push_back(std::sqrt(to_double(rad)));
    Alg r;
    r.fld_ = shared_from_this();
    r.lev_ = levels();
    r.c_.assign(std::size_t(1) << r.lev_, Rat(0));
    r.c_[std::size_t(1) << (r.lev_ - 1)] = Rat(1);
    return r;
}

}  // namespace singsurf
