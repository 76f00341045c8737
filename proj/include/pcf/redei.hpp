#pragma once

#include <optional>
#include <vector>

#include "pcf/analysis.hpp"

namespace pcf {

// Periodic representation of a root of x^2 + hx - d built from the Redei
// identity: head z, repeating block (-(h+2z)/(z^2+hz-d), h+2z). At h = 0,
// d = D this is [z, repeat(2z/(D - z^2), 2z)] for sqrt(D). The block's sign
// placement is the unique one consistent with that special case; the fixed
// point of the tail satisfies x^2 + hx - d = 0 for either root.
inline expansion redei_expansion(const integer& h, const integer& d, const integer& z,
                                 const padic_context& ctx) {
    integer disc = h * h + 4 * d;
    if (disc >= 0 && mpz_perfect_square_p(disc.get_mpz_t()))
        throw cf_error(error_code::bad_input, "x^2 + hx - d is reducible over Q");
    integer norm = z * z + h * z - d;
    if (norm == 0)
        throw cf_error(error_code::degenerate_z, "z is a root of x^2 + hx - d");
    if (h + 2 * z == 0)
        throw cf_error(error_code::bad_input, "h + 2z = 0 degenerates the period block");

    expansion e(ctx);
    e.algorithm = "redei";
    e.quotients = {rational(z), make_rational(-(h + 2 * z), norm), rational(h + 2 * z)};
    e.numerators = {rational(1), rational(1), rational(1)};
    e.status = expansion_status::periodic(1, 2);
    return e;
}

namespace detail {

// The root of x^2 + hx - d whose balanced first digit is z (the one the
// Redei head approximates p-adically).
inline std::optional<qp_number> root_near(const integer& h, const integer& D, const integer& z,
                                          const padic_context& ctx) {
    for (branch_tag b : {branch_tag::principal, branch_tag::conjugate}) {
        qp_number alpha = qp_number::quadratic(rational(-h), rational(2), D, b);
        if (valuation(alpha, ctx) == 0l && floor_s(alpha, ctx) == rational(z)) return alpha;
    }
    return std::nullopt;
}

}  // namespace detail

// Search for an integer z with z^2 + hz - d = p, 1 <= |z| <= (p-1)/2 and
// 1 <= |h+2z| <= (p-1)/2. For such a z, Browkin II's own expansion of the
// root near z equals [z, repeat(-(h+2z)/p, h+2z)]; the match is verified by
// running the algorithm before z is returned.
inline std::optional<integer> browkin2_redei_match(const integer& h, const integer& d,
                                                   const padic_context& ctx) {
    integer disc0 = h * h + 4 * d;
    if (disc0 >= 0 && mpz_perfect_square_p(disc0.get_mpz_t()))
        throw cf_error(error_code::bad_input, "x^2 + hx - d is reducible over Q");
    integer disc = h * h + 4 * (d + ctx.p);
    if (disc < 0 || !mpz_perfect_square_p(disc.get_mpz_t())) return std::nullopt;
    integer t;
    mpz_sqrt(t.get_mpz_t(), disc.get_mpz_t());

    std::vector<integer> candidates;
    for (const integer& num : {integer(-h + t), integer(-h - t)})
        if (num % 2 == 0) candidates.push_back(num / 2);
    if (candidates.size() == 2 && candidates[0] > candidates[1])
        std::swap(candidates[0], candidates[1]);

    integer half = (integer(ctx.p) - 1) / 2;
    for (const integer& z : candidates) {
        integer w = h + 2 * z;
        if (abs(z) < 1 || abs(z) > half) continue;
        if (abs(w) < 1 || abs(w) > half) continue;

        auto alpha = detail::root_near(h, disc0, z, ctx);
        if (!alpha) continue;
        expansion got = expand(*alpha, algorithm_id::browkin2, ctx.with_budget(128));
        if (!got.status.is_periodic()) continue;
        rational q_odd = make_rational(-w, integer(ctx.p));
        rational q_even(w);
        bool match = got.quotient(0) == rational(z);
        long span = got.stored_count() + got.status.period;
        for (long i = 1; match && i < span; ++i)
            match = got.quotient(i) == (i % 2 == 1 ? q_odd : q_even);
        if (match) return z;
    }
    return std::nullopt;
}

}  // namespace pcf
