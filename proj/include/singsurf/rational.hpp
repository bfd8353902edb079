#pragma once

#include <gmpxx.h>

#include <cmath>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>

namespace singsurf {

/// Exact rational scalar. mpq_class gives value semantics, exact
/// comparisons and automatic canonicalization of arithmetic results.
using Rat = mpq_class;

inline Rat ratio(long num, long den) {
    if (den == 0) throw std::invalid_argument("ratio: zero denominator");
    Rat r(num, den);
    r.canonicalize();
    return r;
}

inline Rat ratio(const mpz_class& num, const mpz_class& den) {
    if (den == 0) throw std::invalid_argument("ratio: zero denominator");
    Rat r(num, den);
    r.canonicalize();
    return r;
}

inline bool is_zero(const Rat& r) { return sgn(r) == 0; }

inline double to_double(const Rat& r) { return r.get_d(); }

inline std::string to_str(const Rat& r) { return r.get_str(); }

inline Rat parse_rat(const std::string& s) {
    Rat r;
    if (r.set_str(s, 10) != 0)
        throw std::invalid_argument("parse_rat: bad rational literal '" + s + "'");
    r.canonicalize();
    return r;
}

/// Exact square root when the argument is a perfect square in Q.
inline std::optional<Rat> try_sqrt(const Rat& r) {
    int s = sgn(r);
    if (s < 0) return std::nullopt;
    if (s == 0) return Rat(0);
    const mpz_class& num = r.get_num();
    const mpz_class& den = r.get_den();
    if (!mpz_perfect_square_p(num.get_mpz_t()) || !mpz_perfect_square_p(den.get_mpz_t()))
        return std::nullopt;
    mpz_class rn, rd;
    mpz_sqrt(rn.get_mpz_t(), num.get_mpz_t());
    mpz_sqrt(rd.get_mpz_t(), den.get_mpz_t());
    return ratio(rn, rd);
}

/// Nearest rational with small denominator, via continued fractions.
/// Returns nothing when x has no convergent with denominator <= qmax
/// within the given relative tolerance.
inline std::optional<Rat> snap_to_rational(double x, long qmax = 1000000,
                                           double tol = 1e-12) {
    if (!std::isfinite(x)) return std::nullopt;
    // continued-fraction convergents h_n/k_n of x:
    // h_n = a_n h_{n-1} + h_{n-2}, with (h_{-2}, h_{-1}) = (0, 1)
    double y = x;
    long hm2 = 0, hm1 = 1, km2 = 1, km1 = 0;
    for (int it = 0; it < 48; ++it) {
        double fl = std::floor(y);
        if (fl > 9e14 || fl < -9e14) break;
        long a = long(fl);
        long h = a * hm1 + hm2;
        long k = a * km1 + km2;
        hm2 = hm1;
        km2 = km1;
        hm1 = h;
        km1 = k;
        if (k > qmax) break;
        if (std::abs(double(h) / double(k) - x) <= tol * std::max(1.0, std::abs(x)))
            return ratio(h, k);
        double frac = y - fl;
        if (frac < 1e-15) break;
        y = 1.0 / frac;
    }
    return std::nullopt;
}

template <class F>
F int_pow(const F& base, int e) {
    if (e < 0) throw std::invalid_argument("int_pow: negative exponent");
    F acc(1);
    F b = base;
    while (e > 0) {
        if (e & 1) acc = acc * b;
        b = b * b;
        e >>= 1;
    }
    return acc;
}

/// n! as a field element.
template <class F>
F factorial(int n) {
    F acc(1);
    for (int i = 2; i <= n; ++i) acc = acc * F(i);
    return acc;
}

}  // namespace singsurf
