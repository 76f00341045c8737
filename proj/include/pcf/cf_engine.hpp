#pragma once

#include <array>
#include <optional>
#include <vector>

#include "pcf/algorithms.hpp"
#include "pcf/digits.hpp"
#include "pcf/expansion.hpp"

namespace pcf {

// Convergents (A_0,B_0)..(A_n,B_n) of the recursion
//   A_i = a_i A_{i-1} + b_i A_{i-2},  B_i = a_i B_{i-1} + b_i B_{i-2}
// with seeds A_{-1}=1, B_{-1}=0, A_{-2}=0, B_{-2}=1 (so A_0 = a_0, B_0 = 1,
// A_1 = a_1 a_0 + b_1, B_1 = a_1). Periodic tails are synthesized on demand.
inline std::vector<convergent> convergents(const expansion& e, long upto) {
    if (!e.index_ok(upto))
        throw cf_error(error_code::index_beyond_finite, "convergent index out of range");
    std::vector<convergent> out;
    out.reserve(static_cast<size_t>(upto) + 1);
    rational A1(1), A2(0), B1(0), B2(1);  // A_{i-1}, A_{i-2}, B_{i-1}, B_{i-2}
    for (long i = 0; i <= upto; ++i) {
        rational b = e.numerator_entering(i);
        rational A = e.quotient(i) * A1 + b * A2;
        rational B = e.quotient(i) * B1 + b * B2;
        out.push_back({A, B, i});
        A2 = A1; A1 = A;
        B2 = B1; B1 = B;
    }
    return out;
}

// [[A_n, A_{n-1}], [B_n, B_{n-1}]] as the product of the per-term factors
// [[a_0,1],[1,0]] [[1,0],[0,b_1]] [[a_1,1],[1,0]] ... [[a_n,1],[1,0]],
// returned row-major.
inline std::array<rational, 4> matrix_form(const expansion& e, long n) {
    if (!e.index_ok(n))
        throw cf_error(error_code::index_beyond_finite, "matrix index out of range");
    std::array<rational, 4> M{rational(1), rational(0), rational(0), rational(1)};
    auto mul = [&M](const std::array<rational, 4>& F) {
        std::array<rational, 4> R{M[0] * F[0] + M[1] * F[2], M[0] * F[1] + M[1] * F[3],
                                  M[2] * F[0] + M[3] * F[2], M[2] * F[1] + M[3] * F[3]};
        M = R;
    };
    for (long i = 0; i <= n; ++i) {
        if (i > 0) mul({rational(1), rational(0), rational(0), e.numerator_entering(i)});
        mul({e.quotient(i), rational(1), rational(1), rational(0)});
    }
    return M;
}

// Exact value A_N/B_N of a finite expansion.
inline rational evaluate_finite(const expansion& e) {
    if (!e.status.is_finite())
        throw cf_error(error_code::not_finite, "evaluate_finite on a non-finite expansion");
    long n = e.stored_count() - 1;
    if (n < 0) throw cf_error(error_code::not_finite, "empty expansion");
    convergent last = convergents(e, n).back();
    if (last.B == 0) throw cf_error(error_code::bad_input, "degenerate expansion: B_N = 0");
    return last.A / last.B;
}

namespace detail {

struct tail_quadratic {
    rational gamma, beta, delta;  // gamma y^2 + beta y + delta = 0
};

// Fixed-point equation of the periodic tail y = [q_m, ..., q_{m+k-1}, y...]:
// y = (y A' + c A'') / (y B' + c B'') over the period block's convergents,
// where c is the numerator re-entering the tail.
inline tail_quadratic tail_equation(const expansion& e) {
    long m = e.status.pre_period, k = e.status.period;
    rational A1(1), A2(0), B1(0), B2(1);
    for (long j = 0; j < k; ++j) {
        rational b = j == 0 ? rational(1) : e.numerator_below(m + j - 1);
        rational A = e.quotient(m + j) * A1 + b * A2;
        rational B = e.quotient(m + j) * B1 + b * B2;
        A2 = A1; A1 = A;
        B2 = B1; B1 = B;
    }
    rational c = e.numerator_below(m + k - 1);
    return {B1, c * B2 - A1, -(c * A2)};
}

inline bool rational_sqrt(const rational& x, rational& root) {
    if (x < 0) return false;
    const integer& n = x.get_num();
    const integer& d = x.get_den();
    if (!mpz_perfect_square_p(n.get_mpz_t()) || !mpz_perfect_square_p(d.get_mpz_t()))
        return false;
    integer rn, rd;
    mpz_sqrt(rn.get_mpz_t(), n.get_mpz_t());
    mpz_sqrt(rd.get_mpz_t(), d.get_mpz_t());
    root = make_rational(rn, rd);
    return true;
}

// Both roots of the tail equation, "+" orientation first.
inline std::vector<qp_number> tail_roots(const tail_quadratic& t) {
    std::vector<qp_number> roots;
    if (t.gamma == 0) {
        if (t.beta == 0)
            throw cf_error(error_code::inconsistent_period, "degenerate fixed-point equation");
        roots.emplace_back(rational(-t.delta / t.beta));
        return roots;
    }
    rational disc = t.beta * t.beta - 4 * t.gamma * t.delta;
    rational w;
    if (detail::rational_sqrt(disc, w)) {
        roots.emplace_back(rational((-t.beta + w) / (2 * t.gamma)));
        if (w != 0) roots.emplace_back(rational((-t.beta - w) / (2 * t.gamma)));
        return roots;
    }
    integer D = disc.get_num() * disc.get_den();
    rational d(disc.get_den());
    roots.push_back(qp_number::quadratic(-t.beta * d, 2 * t.gamma * d, D));
    roots.push_back(qp_number::quadratic(-t.beta * d, 2 * t.gamma * d, D, branch_tag::conjugate));
    return roots;
}

inline std::optional<algorithm_id> algorithm_from_name(const std::string& name) {
    for (algorithm_id a : {algorithm_id::schneider, algorithm_id::ruban, algorithm_id::browkin1,
                           algorithm_id::browkin2, algorithm_id::mrs3, algorithm_id::mr_st})
        if (name == algorithm_name(a)) return a;
    return std::nullopt;
}

// Does one period of the generating policy, started at the tail's phase,
// reproduce the stored quotients and numerators from this value?
inline bool reproduces_period(const expansion& e, algorithm_id alg, const qp_number& y) {
    long m = e.status.pre_period, k = e.status.period;
    expansion_state st{y, m};
    try {
        for (long j = 0; j < k; ++j) {
            step_result r = step(st, alg, e.ctx);
            if (r.a != e.quotient(m + j)) return false;
            if (!r.next) return false;
            if (r.b != e.numerator_below(m + j)) return false;
            st = *r.next;
        }
    } catch (const cf_error&) {
        return false;
    }
    return true;
}

}  // namespace detail

// Value of a periodic expansion: the tail is the fixed point of its period's
// Moebius map, and the pre-period map is applied on top. For expansions
// generated by one of the six policies the root is the one that reproduces
// the stored period under re-expansion (InconsistentPeriod if neither does);
// externally built expansions (e.g. Redei) take the "+sqrt" root, a
// deterministic choice that satisfies the same fixed-point equation.
inline qp_number evaluate_periodic(const expansion& e) {
    if (!e.status.is_periodic())
        throw cf_error(error_code::bad_input, "evaluate_periodic on a non-periodic expansion");
    detail::tail_quadratic t = detail::tail_equation(e);
    std::vector<qp_number> roots = detail::tail_roots(t);

    std::optional<algorithm_id> alg = detail::algorithm_from_name(e.algorithm);
    qp_number tail;
    if (alg) {
        bool found = false;
        for (const qp_number& y : roots) {
            if (detail::reproduces_period(e, *alg, y)) {
                tail = y;
                found = true;
                break;
            }
        }
        if (!found)
            throw cf_error(error_code::inconsistent_period, "no root reproduces the period");
    } else {
        tail = roots.front();
    }

    qp_number z = tail;
    for (long i = e.status.pre_period - 1; i >= 0; --i)
        z = (reciprocal(z) * e.numerator_below(i)) + e.quotient(i);
    return z;
}

// v_p(x - A_k/B_k) for k = 0..upto, exact; +infinity where the convergent
// recovers x. For a finite expansion the profile stops at its last index.
inline std::vector<extended_val> approximation_profile(const expansion& e, const qp_number& x,
                                                       long upto) {
    if (!e.status.is_periodic() && upto >= e.stored_count()) upto = e.stored_count() - 1;
    std::vector<extended_val> out;
    std::vector<convergent> cs = convergents(e, upto);
    for (const convergent& c : cs) {
        if (c.B == 0) throw cf_error(error_code::bad_input, "convergent with B_k = 0");
        out.push_back(valuation(x - rational(c.A / c.B), e.ctx));
    }
    return out;
}

}  // namespace pcf
