#pragma once

#include <vector>

#include "pcf/context.hpp"
#include "pcf/qp_number.hpp"
#include "pcf/rational.hpp"

namespace pcf {

enum class exactness { exact, window };

// Digit window of a p-adic expansion: digits[i] is the coefficient of
// p^(start_valuation + i) in the context's representative set. The first
// digit is nonzero unless the represented value is 0.
struct padic_digits {
    long start_valuation = 0;
    std::vector<long> digits;
    exactness kind = exactness::window;
};

namespace detail {

// Tonelli-Shanks square root of a nonzero quadratic residue mod an odd prime.
inline integer sqrt_mod_p(const integer& a, const integer& p) {
    integer legendre;
    integer e = (p - 1) / 2;
    mpz_powm(legendre.get_mpz_t(), a.get_mpz_t(), e.get_mpz_t(), p.get_mpz_t());
    if (legendre != 1)
        throw cf_error(error_code::non_residue, "not a quadratic residue mod p");

    if (p % 4 == 3) {
        integer r, e4 = (p + 1) / 4;
        mpz_powm(r.get_mpz_t(), a.get_mpz_t(), e4.get_mpz_t(), p.get_mpz_t());
        return r;
    }

    integer q = p - 1;
    unsigned long s = 0;
    while (q % 2 == 0) { q /= 2; ++s; }

    integer z = 2;
    while (true) {
        integer l;
        mpz_powm(l.get_mpz_t(), z.get_mpz_t(), e.get_mpz_t(), p.get_mpz_t());
        if (l == p - 1) break;
        ++z;
    }

    integer m(static_cast<long>(s));
    integer c, t, r;
    mpz_powm(c.get_mpz_t(), z.get_mpz_t(), q.get_mpz_t(), p.get_mpz_t());
    mpz_powm(t.get_mpz_t(), a.get_mpz_t(), q.get_mpz_t(), p.get_mpz_t());
    integer qe = (q + 1) / 2;
    mpz_powm(r.get_mpz_t(), a.get_mpz_t(), qe.get_mpz_t(), p.get_mpz_t());

    while (t != 1) {
        integer tt = t;
        long i = 0;
        while (tt != 1) {
            tt = (tt * tt) % p;
            ++i;
        }
        integer b = c;
        for (long j = 0; j < m.get_si() - i - 1; ++j) b = (b * b) % p;
        r = (r * b) % p;
        c = (b * b) % p;
        t = (t * c) % p;
        m = i;
    }
    return r;
}

// Newton lift of sqrt(d) from mod p to mod p^prec; d a unit residue, returns
// the root congruent to the principal first digit (smaller representative).
inline integer sqrt_unit_lift(const integer& d, long p, long prec) {
    integer pz(p);
    integer a = d % pz;
    if (a < 0) a += pz;
    integer x = sqrt_mod_p(a, pz);
    if (x > (pz - 1) / 2) x = pz - x;  // principal branch
    long have = 1;
    while (have < prec) {
        long next = have * 2 < prec ? have * 2 : prec;
        integer m = pow_p(p, next);
        integer dm = d % m;
        if (dm < 0) dm += m;
        integer inv;
        if (mpz_invert(inv.get_mpz_t(), x.get_mpz_t(), m.get_mpz_t()) == 0)
            throw cf_error(error_code::non_residue, "lift lost invertibility");
        x = ((x + dm * inv % m) % m) * ((m + 1) / 2) % m;  // (x + d/x)/2
        if (x < 0) x += m;
        have = next;
    }
    return x % pow_p(p, prec);
}

struct sqrt_shape {
    long k0;      // v_p(sqrt D) = v_p(D)/2
    integer dprime;  // D / p^(2 k0), a unit
};

inline sqrt_shape split_sqrt(const integer& D, long p) {
    long vD = vp_int(D, p);
    if (vD % 2 != 0)
        throw cf_error(error_code::non_residue, "v_p(D) odd: sqrt(D) not in Q_p");
    long k0 = vD / 2;
    integer dprime = D / pow_p(p, vD);
    return {k0, dprime};
}

// First digit (index k0) of the principal sqrt(D), as a standard representative.
inline long sqrt_first_digit(const integer& D, long p) {
    sqrt_shape sh = split_sqrt(D, p);
    return sqrt_unit_lift(sh.dprime, p, 1).get_si();
}

// Valuation of u + w*sqrt(D) for rationals u, w (principal branch), exact.
// Generic case is min of the component valuations; on a tie, a first-digit
// test decides whether cancellation occurs, and the norm identity
// v(u + w sqrt D) + v(u - w sqrt D) = v(u^2 - w^2 D) resolves the
// cancellation case without iterating precision.
inline long quad_pair_valuation(const rational& u, const rational& w, const integer& D,
                                const padic_context& ctx) {
    sqrt_shape sh = split_sqrt(D, ctx.p);
    if (w == 0) throw cf_error(error_code::bad_input, "rational handled elsewhere");
    long vB = vp_rational(w, ctx.p).v + sh.k0;
    if (u == 0) return vB;
    long vA = vp_rational(u, ctx.p).v;
    if (vA != vB) return vA < vB ? vA : vB;

    long m = vA;
    integer pz(ctx.p);
    integer du = unit_mod(scale_by_p(u, ctx.p, -m), pz);
    integer dw = unit_mod(scale_by_p(w, ctx.p, -(m - sh.k0)), pz);
    long s1 = sqrt_first_digit(D, ctx.p);
    integer first = (du + dw * s1) % pz;
    if (first != 0) return m;
    // cancellation: conjugate sits at exactly m (their sum 2u does)
    return vp_rational(u * u - w * w * rational(D), ctx.p).v - m;
}

}  // namespace detail

// s with s^2 = D (mod p^k), branch-resolved. Standard convention picks the
// root with the smaller first representative; balanced picks the positive
// first representative -- the same residue class for odd p.
inline integer sqrt_hensel(const integer& D, const padic_context& ctx, long k,
                           branch_tag branch = branch_tag::principal) {
    if (k < 1) throw cf_error(error_code::bad_input, "k must be >= 1");
    if (D == 0 || (D > 0 && mpz_perfect_square_p(D.get_mpz_t())))
        throw cf_error(error_code::bad_input, "D must not be a perfect square");
    detail::sqrt_shape sh = detail::split_sqrt(D, ctx.p);
    long lift = k - 2 * sh.k0;
    if (lift < 1) lift = 1;
    integer s = detail::sqrt_unit_lift(sh.dprime, ctx.p, lift);
    integer pk = pow_p(ctx.p, k);
    s = (s * pow_p(ctx.p, sh.k0)) % pk;
    if (branch == branch_tag::conjugate) s = (pk - s) % pk;
    return s;
}

// p-adic valuation of x; +infinity for 0. Quadratic values use the exact
// tie-break described at quad_pair_valuation.
inline extended_val valuation(const qp_number& x, const padic_context& ctx) {
    if (x.is_rational()) return vp_rational(x.rat(), ctx.p);
    const auto& q = x.quad();
    long vnum = detail::quad_pair_valuation(q.P, rational(1), q.D, ctx);
    return extended_val::of(vnum - vp_rational(q.Q, ctx.p).v);
}

// First `count` digits of x starting at v_p(x). Exact for rationals whose
// expansion terminates inside the window; a Hensel-lifted window otherwise.
inline padic_digits digits(const qp_number& x, const padic_context& ctx, long count) {
    if (count < 1) throw cf_error(error_code::bad_input, "count must be >= 1");
    padic_digits out;

    rational y;
    if (x.is_rational()) {
        if (x.rat() == 0) {
            out.start_valuation = 0;
            out.digits.assign(static_cast<size_t>(count), 0);
            out.kind = exactness::exact;
            return out;
        }
        long v = vp_rational(x.rat(), ctx.p).v;
        out.start_valuation = v;
        y = scale_by_p(x.rat(), ctx.p, -v);
    } else {
        const auto& q = x.quad();
        detail::sqrt_shape sh = detail::split_sqrt(q.D, ctx.p);
        long v = valuation(x, ctx).v;
        out.start_valuation = v;
        long vq = vp_rational(q.Q, ctx.p).v;
        long lift = count + v + vq - sh.k0 + ctx.precision_guard;
        if (lift < 1) lift = 1;
        integer s = detail::sqrt_unit_lift(sh.dprime, ctx.p, lift) * pow_p(ctx.p, sh.k0);
        y = (q.P + rational(s)) / q.Q;
        y = scale_by_p(y, ctx.p, -v);
    }

    bool balanced = ctx.balanced();
    for (long i = 0; i < count; ++i) {
        long c = (y == 0) ? 0 : digit_mod_p(y, ctx.p, balanced);
        out.digits.push_back(c);
        y = scale_by_p(y - rational(c), ctx.p, -1);
    }
    out.kind = (x.is_rational() && y == 0) ? exactness::exact : exactness::window;
    return out;
}

// Value equality across possibly different D representations, exact.
// (P1+sqrt D1)/Q1 = (P2+sqrt D2)/Q2 iff the rational parts agree, the squared
// irrational parts agree, and the p-adic first digits agree in sign.
inline bool values_equal(const qp_number& a, const qp_number& b, const padic_context& ctx) {
    if (a.is_rational() != b.is_rational()) return false;
    if (a.is_rational()) return a.rat() == b.rat();
    const auto& qa = a.quad();
    const auto& qb = b.quad();
    if (qa.D == qb.D) return qa.P == qb.P && qa.Q == qb.Q;
    if (qa.P / qa.Q != qb.P / qb.Q) return false;
    if (rational(qa.D) / (qa.Q * qa.Q) != rational(qb.D) / (qb.Q * qb.Q)) return false;
    // magnitudes agree; compare p-adic leading digits of sqrt(D)/Q
    auto lead = [&](const qp_number::quadratic_part& q) {
        detail::sqrt_shape sh = detail::split_sqrt(q.D, ctx.p);
        long vq = vp_rational(q.Q, ctx.p).v;
        integer pz(ctx.p);
        integer uq = unit_mod(scale_by_p(rational(1) / q.Q, ctx.p, vq), pz);
        return (uq * detail::sqrt_first_digit(q.D, ctx.p)) % pz;
    };
    return lead(qa) == lead(qb);
}

}  // namespace pcf
