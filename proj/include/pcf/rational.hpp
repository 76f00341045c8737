#pragma once

#include <gmpxx.h>

#include <compare>
#include <stdexcept>
#include <string>

#include "pcf/errors.hpp"

namespace pcf {

using integer = mpz_class;
using rational = mpq_class;

// Exact rational with reduced form and positive denominator (GMP canonical form).
inline rational make_rational(const integer& num, const integer& den) {
    if (den == 0) throw cf_error(error_code::bad_input, "zero denominator");
    rational q(num, den);
    q.canonicalize();
    return q;
}

inline rational make_rational(long num, long den = 1) {
    return make_rational(integer(num), integer(den));
}

inline integer pow_p(long p, long e) {
    if (e < 0) throw cf_error(error_code::bad_input, "negative exponent");
    integer r;
    mpz_ui_pow_ui(r.get_mpz_t(), static_cast<unsigned long>(p), static_cast<unsigned long>(e));
    return r;
}

// Extended integer for p-adic valuations: finite value or the +infinity sentinel
// (v_p(0)), ordered above every finite value.
struct extended_val {
    bool finite = true;
    long v = 0;

    static extended_val infinity() { return {false, 0}; }
    static extended_val of(long value) { return {true, value}; }

    bool is_infinite() const { return !finite; }

    friend bool operator==(const extended_val& a, const extended_val& b) {
        if (a.finite != b.finite) return false;
        return !a.finite || a.v == b.v;
    }
    friend std::strong_ordering operator<=>(const extended_val& a, const extended_val& b) {
        if (!a.finite && !b.finite) return std::strong_ordering::equal;
        if (!a.finite) return std::strong_ordering::greater;
        if (!b.finite) return std::strong_ordering::less;
        return a.v <=> b.v;
    }
    friend bool operator==(const extended_val& a, long b) { return a.finite && a.v == b; }
    friend std::strong_ordering operator<=>(const extended_val& a, long b) {
        if (!a.finite) return std::strong_ordering::greater;
        return a.v <=> b;
    }
    friend extended_val operator+(const extended_val& a, const extended_val& b) {
        if (!a.finite || !b.finite) return infinity();
        return of(a.v + b.v);
    }
    friend extended_val operator-(const extended_val& a) {
        if (!a.finite) throw cf_error(error_code::bad_input, "negating infinite valuation");
        return of(-a.v);
    }

    std::string str() const { return finite ? std::to_string(v) : "+inf"; }
};

// v_p of a nonzero integer: number of factors p.
inline long vp_int(const integer& n, long p) {
    if (n == 0) throw cf_error(error_code::bad_input, "v_p(0) on integer path");
    integer rest;
    integer pp(p);
    return static_cast<long>(mpz_remove(rest.get_mpz_t(), n.get_mpz_t(), pp.get_mpz_t()));
}

inline extended_val vp_rational(const rational& q, long p) {
    if (q == 0) return extended_val::infinity();
    // canonical form: p divides at most one of num, den
    long vn = vp_int(q.get_num(), p);
    if (vn > 0) return extended_val::of(vn);
    return extended_val::of(-vp_int(q.get_den(), p));
}

// x * p^e for integer e of either sign.
inline rational scale_by_p(const rational& x, long p, long e) {
    if (e == 0) return x;
    integer pw = pow_p(p, e >= 0 ? e : -e);
    rational r = e >= 0 ? rational(x * pw) : rational(x / pw);
    return r;
}

// num * den^{-1} mod m for a rational whose denominator is invertible mod m.
inline integer unit_mod(const rational& x, const integer& m) {
    integer num = x.get_num() % m;
    if (num < 0) num += m;
    if (x.get_den() == 1) return num;
    integer inv;
    if (mpz_invert(inv.get_mpz_t(), x.get_den().get_mpz_t(), m.get_mpz_t()) == 0)
        throw cf_error(error_code::bad_input, "denominator not invertible modulo p^k");
    integer r = (num * inv) % m;
    return r;
}

// Single convention digit of a p-adic unit given as an exact rational with
// p-free denominator: the representative of x mod p.
inline long digit_mod_p(const rational& x, long p, bool balanced) {
    integer d = unit_mod(x, integer(p));
    long c = d.get_si();
    if (balanced && c > (p - 1) / 2) c -= p;
    return c;
}

}  // namespace pcf
