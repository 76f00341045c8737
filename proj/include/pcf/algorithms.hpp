#pragma once

#include <optional>
#include <string>
#include <unordered_map>

#include "pcf/expansion.hpp"
#include "pcf/floors.hpp"

namespace pcf {

// Exact iteration state: the complete quotient alpha_n and its index (the
// index fixes the phase for the phase-dependent policies).
struct expansion_state {
    qp_number alpha;
    long index = 0;
};

// One policy application: the emitted pair (a_n, b_n) and the next state;
// next is absent when alpha_n = a_n (the expansion is finite at this step).
struct step_result {
    rational a;
    rational b;  // numerator b_{n+1} below a_n (1 for simple policies)
    std::optional<expansion_state> next;
};

namespace detail {

inline void require_convention(algorithm_id alg, const padic_context& ctx) {
    if (algorithm_balanced(alg) != ctx.balanced())
        throw cf_error(error_code::convention_mismatch,
                       std::string(algorithm_name(alg)) + " needs the " +
                           (algorithm_balanced(alg) ? "balanced" : "standard") + " convention");
}

inline int sign_of(const rational& r) { return sgn(r); }

// Odd-step quotient of Browkin II and the t-step of Mrs3: a = t(alpha) when
// v_p(alpha - t(alpha)) = 0, else t(alpha) - sign(t(alpha)). The adjustment
// also applies when alpha = t(alpha) (v_p = +inf): the algorithm then leaves
// the value via 1/sign(t) and terminates at the following s-step. t cannot
// vanish here since these steps only see v_p(alpha) < 0.
inline rational t_with_sign_adjustment(const qp_number& alpha, const padic_context& ctx) {
    rational t = floor_t(alpha, ctx);
    if (t == 0) throw cf_error(error_code::bad_input, "t vanished at a t-step");
    if (valuation(alpha - t, ctx) == 0l) return t;
    return t - rational(sign_of(t));
}

// Partial quotient chosen by the policy at the given phase.
inline rational policy_quotient(const qp_number& alpha, algorithm_id alg, long n,
                                const padic_context& ctx) {
    switch (alg) {
        case algorithm_id::ruban:
            return floor_ruban(alpha, ctx);
        case algorithm_id::schneider:
            return detail::digit_head(alpha, ctx, 0);  // first standard digit of a unit
        case algorithm_id::browkin1:
            return floor_s(alpha, ctx);
        case algorithm_id::browkin2: {
            if (n % 2 == 0) return floor_s(alpha, ctx);
            return t_with_sign_adjustment(alpha, ctx);
        }
        case algorithm_id::mrs3: {
            long r = n % 3;
            if (r == 0) return floor_s(alpha, ctx);
            if (r == 1) return t_with_sign_adjustment(alpha, ctx);
            return floor_s(alpha, ctx) - rational(floor_u(alpha, ctx));
        }
        case algorithm_id::mr_st:
            if (n % 2 == 0) return floor_s(alpha, ctx);
            return floor_t(alpha, ctx);
    }
    throw cf_error(error_code::bad_input, "unknown algorithm");
}

}  // namespace detail

// Single step of a policy. For Schneider the emitted numerator is
// b_{n+1} = p^{e_{n+1}} with e_{n+1} = v_p(alpha_n - a_n) and the recursion
// alpha_{n+1} = b_{n+1}/(alpha_n - a_n); the simple policies use b = 1 and
// alpha_{n+1} = 1/(alpha_n - a_n).
inline step_result step(const expansion_state& state, algorithm_id alg,
                        const padic_context& ctx) {
    detail::require_convention(alg, ctx);
    const qp_number& alpha = state.alpha;
    if (alg == algorithm_id::schneider && valuation(alpha, ctx) < 0l)
        throw cf_error(error_code::schneider_domain, "Schneider needs v_p(x) >= 0");

    rational a = detail::policy_quotient(alpha, alg, state.index, ctx);
    if (alpha.is_rational() && alpha.rat() == a)
        return {a, rational(1), std::nullopt};

    if (alg == algorithm_id::schneider) {
        long e = valuation(alpha - a, ctx).v;
        rational b = rational(pow_p(ctx.p, e));
        qp_number next = reciprocal_shift(alpha, a) * b;
        return {a, b, expansion_state{next, state.index + 1}};
    }
    return {a, rational(1), expansion_state{reciprocal_shift(alpha, a), state.index + 1}};
}

namespace detail {

inline std::string state_key(const qp_number& x, long phase) {
    std::string key = std::to_string(phase) + "|";
    if (x.is_rational()) {
        key += "r" + x.rat().get_str();
    } else {
        const auto& q = x.quad();
        key += "q" + q.P.get_str() + "," + q.Q.get_str();
    }
    return key;
}

}  // namespace detail

// Run a policy to completion: Finite when alpha_n = a_n, Periodic on exact
// complete-quotient state repetition (state = value plus policy phase),
// Truncated at the context's step budget. The returned (pre_period, period)
// is minimal under state equality.
inline expansion expand(const qp_number& x, algorithm_id alg, const padic_context& ctx) {
    detail::require_convention(alg, ctx);
    expansion e(ctx);
    e.algorithm = algorithm_name(alg);

    long phase_mod = algorithm_phase_modulus(alg);
    std::unordered_map<std::string, long> seen;
    expansion_state st{x, 0};

    for (long n = 0; n < ctx.step_budget; ++n) {
        std::string key = detail::state_key(st.alpha, n % phase_mod);
        auto it = seen.find(key);
        if (it != seen.end()) {
            e.status = expansion_status::periodic(it->second, n - it->second);
            return e;
        }
        seen.emplace(std::move(key), n);

        step_result r = step(st, alg, ctx);
        e.quotients.push_back(r.a);
        if (!r.next) {
            e.status = expansion_status::finite();
            return e;
        }
        e.numerators.push_back(r.b);
        st = *r.next;
    }
    e.numerators.pop_back();  // the tail behind the last stored quotient was never explored
    e.status = expansion_status::truncated(e.stored_count());
    return e;
}

}  // namespace pcf
