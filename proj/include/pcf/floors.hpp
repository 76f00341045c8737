#pragma once

#include "pcf/digits.hpp"

namespace pcf {

namespace detail {

// Sum of digits c_i p^i for i in [v, upper], given the window starting at v.
inline rational digit_head(const qp_number& x, const padic_context& ctx, long upper) {
    extended_val v = valuation(x, ctx);
    if (v.is_infinite() || v.v > upper) return rational(0);
    long count = upper - v.v + 1;
    padic_digits d = digits(x, ctx, count);
    rational sum(0);
    for (long i = 0; i < count; ++i)
        sum += scale_by_p(rational(d.digits[static_cast<size_t>(i)]), ctx.p, v.v + i);
    return sum;
}

}  // namespace detail

// Browkin's s: the balanced digits up to index 0. |s(x)| < p/2, and
// v_p(x - s(x)) >= 1 whenever x != s(x).
inline rational floor_s(const qp_number& x, const padic_context& ctx) {
    if (!ctx.balanced())
        throw cf_error(error_code::convention_mismatch, "floor_s needs the balanced convention");
    return detail::digit_head(x, ctx, 0);
}

// Browkin's t: the balanced digits up to index -1 (no constant term).
// |t(x)| < 1/2, and v_p(x - t(x)) >= 0.
inline rational floor_t(const qp_number& x, const padic_context& ctx) {
    if (!ctx.balanced())
        throw cf_error(error_code::convention_mismatch, "floor_t needs the balanced convention");
    return detail::digit_head(x, ctx, -1);
}

// Ruban's integer part: the standard digits up to index 0; always >= 0.
inline rational floor_ruban(const qp_number& x, const padic_context& ctx) {
    if (ctx.balanced())
        throw cf_error(error_code::convention_mismatch, "floor_ruban needs the standard convention");
    return detail::digit_head(x, ctx, 0);
}

// The three-valued correction from the constant balanced digit c_0:
// +1 for c_0 in {2..(p-1)/2} or -1;  -1 for c_0 in {-(p-1)/2..-2} or +1;
// 0 for c_0 = 0. Defined on Z_p only.
inline int floor_u(const qp_number& x, const padic_context& ctx) {
    if (!ctx.balanced())
        throw cf_error(error_code::convention_mismatch, "floor_u needs the balanced convention");
    extended_val v = valuation(x, ctx);
    if (v < 0l) throw cf_error(error_code::negative_valuation, "floor_u needs v_p(x) >= 0");
    if (v > 0l) return 0;
    long c0 = digits(x, ctx, 1).digits[0];
    if (c0 == 0) return 0;
    if (c0 >= 2 || c0 == -1) return 1;
    return -1;
}

// 1/(x - a), exactly. Quadratic state update: P' = aQ - P, Q' = (D - P'^2)/Q,
// so that the result is (P' + sqrt D)/Q'; D and branch unchanged.
inline qp_number reciprocal_shift(const qp_number& x, const rational& a) {
    if (x.is_rational() && x.rat() == a)
        throw cf_error(error_code::division_by_zero, "reciprocal_shift at x = a");
    return reciprocal(x - a);
}

}  // namespace pcf
