#pragma once

#include <array>
#include <cmath>
#include <optional>
#include <unordered_map>
#include <utility>
#include <vector>

#include "pcf/cf_engine.hpp"

namespace pcf {

enum class convergence_condition {
    all_negative,            // v_p(a_n) < 0, n >= 1
    even_zero_odd_negative,  // v_p(a_2n) = 0 (n>=1), v_p(a_2n+1) < 0
    pairwise_negative,       // v_p(a_n a_{n+1}) < 0, n >= 1
    three_step,              // v_p < 0, = 0, = 0 on residues 1,2,0 mod 3, with the
                             // unit condition v_p(a_{3n+3} a_{3n+2} + 1) = 0 and the
                             // chain v_p(B_{3n-2}) = v_p(B_{3n-1}) = v_p(B_{3n}) > v_p(B_{3n+1})
};

struct convergence_report {
    convergence_condition condition;
    bool holds = true;
    std::optional<long> first_violation;
};

namespace detail {

inline extended_val quotient_val(const expansion& e, long i) {
    return vp_rational(e.quotient(i), e.ctx.p);
}

}  // namespace detail

// Verify one of the valuation patterns on a prefix of the quotients
// (default prefix: everything stored, plus one more period for periodic
// records so the wrap-around pairs are covered).
inline convergence_report check_convergence(const expansion& e, convergence_condition cond,
                                            long prefix = -1) {
    if (e.stored_count() < 2)
        throw cf_error(error_code::bad_input, "need at least two quotients");
    long n_insp = prefix >= 0 ? prefix
                              : e.stored_count() + (e.status.is_periodic() ? e.status.period : 0);
    if (!e.status.is_periodic() && n_insp > e.stored_count()) n_insp = e.stored_count();

    convergence_report rep{cond, true, std::nullopt};
    auto fail = [&rep](long i) {
        if (rep.holds) {
            rep.holds = false;
            rep.first_violation = i;
        }
    };

    switch (cond) {
        case convergence_condition::all_negative:
            for (long i = 1; i < n_insp && rep.holds; ++i)
                if (!(detail::quotient_val(e, i) < 0l)) fail(i);
            break;
        case convergence_condition::even_zero_odd_negative:
            for (long i = 1; i < n_insp && rep.holds; ++i) {
                extended_val v = detail::quotient_val(e, i);
                if (i % 2 == 0 ? !(v == 0l) : !(v < 0l)) fail(i);
            }
            break;
        case convergence_condition::pairwise_negative:
            for (long i = 1; i + 1 < n_insp && rep.holds; ++i)
                if (!(detail::quotient_val(e, i) + detail::quotient_val(e, i + 1) < 0l)) fail(i);
            break;
        case convergence_condition::three_step: {
            for (long n = 0; rep.holds; ++n) {
                long i1 = 3 * n + 1, i2 = 3 * n + 2, i3 = 3 * n + 3;
                if (i1 >= n_insp) break;
                if (!(detail::quotient_val(e, i1) < 0l)) { fail(i1); break; }
                if (i2 >= n_insp) break;
                if (!(detail::quotient_val(e, i2) == 0l)) { fail(i2); break; }
                if (i3 >= n_insp) break;
                if (!(detail::quotient_val(e, i3) == 0l)) { fail(i3); break; }
                rational unit = e.quotient(i3) * e.quotient(i2) + 1;
                if (!(vp_rational(unit, e.ctx.p) == 0l)) { fail(i3); break; }
            }
            if (rep.holds) {
                long upto = n_insp - 1;
                if (upto >= 0 && e.index_ok(upto)) {
                    std::vector<convergent> cs = convergents(e, upto);
                    auto vB = [&](long i) { return vp_rational(cs[static_cast<size_t>(i)].B, e.ctx.p); };
                    for (long n = 1; rep.holds && 3 * n + 1 <= upto; ++n) {
                        long b0 = 3 * n - 2;
                        if (!(vB(b0) == vB(b0 + 1) && vB(b0 + 1) == vB(b0 + 2) &&
                              vB(b0 + 2) > vB(b0 + 3)))
                            fail(3 * n + 1);
                    }
                }
            }
            break;
        }
    }
    return rep;
}

// The Browkin identities v_p(A_n) = sum v_p(a_0..a_n) and
// v_p(B_n) = sum v_p(a_1..a_n), checked exactly on the prefix. Reports false
// (no error) when the generating quotients violate the sufficient condition.
inline bool verify_valuation_identities(const expansion& e, long upto) {
    if (!e.index_ok(upto)) upto = e.stored_count() - 1;
    std::vector<convergent> cs = convergents(e, upto);
    extended_val sumA = extended_val::of(0), sumB = extended_val::of(0);
    for (long i = 0; i <= upto; ++i) {
        extended_val va = detail::quotient_val(e, i);
        sumA = sumA + va;
        if (i >= 1) sumB = sumB + va;
        if (!(vp_rational(cs[static_cast<size_t>(i)].A, e.ctx.p) == sumA)) return false;
        if (!(vp_rational(cs[static_cast<size_t>(i)].B, e.ctx.p) == sumB)) return false;
    }
    return true;
}

enum class certificate { ooto_sign, de_weger_sign, two_negative_embeddings, lao_tail };

inline const char* certificate_name(certificate c) {
    switch (c) {
        case certificate::ooto_sign: return "OotoSign";
        case certificate::de_weger_sign: return "DeWegerSign";
        case certificate::two_negative_embeddings: return "TwoNegativeEmbeddings";
        case certificate::lao_tail: return "LaoTail";
    }
    return "?";
}

struct classification {
    enum class verdict { finite, periodic, not_periodic, undetermined };
    verdict v = verdict::undetermined;
    long pre_period = 0;  // periodic
    long period = 0;      // periodic
    long steps_used = 0;
    std::optional<certificate> cert;

    friend bool operator==(const classification& a, const classification& b) {
        return a.v == b.v && a.pre_period == b.pre_period && a.period == b.period &&
               a.steps_used == b.steps_used && a.cert == b.cert;
    }
};

inline const char* verdict_name(classification::verdict v) {
    switch (v) {
        case classification::verdict::finite: return "Finite";
        case classification::verdict::periodic: return "Periodic";
        case classification::verdict::not_periodic: return "NotPeriodic";
        case classification::verdict::undetermined: return "Undetermined";
    }
    return "?";
}

// Step cap for Schneider over Q, shaped after the detection bound
// O(log^2 H(x)) with H = max(|num|, |den|); the survey gives no constant,
// so C = 64 is used and the ambient budget still applies as a floor.
inline long schneider_rational_budget(const rational& x) {
    double h = 3.0;
    double hn = mpz_get_d(x.get_num().get_mpz_t());
    double hd = mpz_get_d(x.get_den().get_mpz_t());
    h = std::max({h, std::fabs(hn), std::fabs(hd)});
    double l = std::log(h);
    return 64 * static_cast<long>(std::ceil(l * l) + 1);
}

// Classify the expansion of a rational. Ruban periodic tails are certified
// LaoTail when the repeating block is the single quotient p - 1/p (the
// complete quotient -1/p fixed point of Laohakosol's theorem).
inline classification classify_rational(const rational& x, algorithm_id alg,
                                        const padic_context& ctx) {
    padic_context run_ctx = ctx;
    if (alg == algorithm_id::schneider) {
        long b = schneider_rational_budget(x);
        if (b > run_ctx.step_budget) run_ctx = run_ctx.with_budget(b);
    }
    expansion e = expand(qp_number(x), alg, run_ctx);
    classification out;
    out.steps_used = e.stored_count();
    switch (e.status.k) {
        case expansion_status::kind::finite:
            out.v = classification::verdict::finite;
            break;
        case expansion_status::kind::periodic: {
            out.v = classification::verdict::periodic;
            out.pre_period = e.status.pre_period;
            out.period = e.status.period;
            if (alg == algorithm_id::ruban && e.status.period == 1) {
                rational lao = rational(ctx.p) - make_rational(1, ctx.p);
                if (e.quotient(e.status.pre_period) == lao) out.cert = certificate::lao_tail;
            }
            break;
        }
        case expansion_status::kind::truncated:
            out.v = classification::verdict::undetermined;
            break;
    }
    return out;
}

namespace detail {

// Real sign of P + sqrt(D) (D > 0 nonsquare, sqrt taken positive).
inline int sign_plus_sqrt(const rational& P, const integer& D) {
    if (P >= 0) return 1;
    return P * P < rational(D) ? 1 : -1;
}
inline int sign_minus_sqrt(const rational& P, const integer& D) {
    if (P <= 0) return -1;
    return P * P > rational(D) ? 1 : -1;
}

}  // namespace detail

// Exact cycle scan of a quadratic expansion without certificates: the
// minimal (pre_period, period) under (P, Q, phase) state equality, or
// nothing within the budget.
inline std::optional<std::pair<long, long>> quadratic_cycle_scan(const qp_number& x,
                                                                 algorithm_id alg,
                                                                 const padic_context& ctx,
                                                                 long budget) {
    long phase_mod = algorithm_phase_modulus(alg);
    std::unordered_map<std::string, long> seen;
    expansion_state st{x, 0};
    for (long n = 0; n < budget; ++n) {
        std::string key = detail::state_key(st.alpha, n % phase_mod);
        auto it = seen.find(key);
        if (it != seen.end()) return std::make_pair(it->second, n - it->second);
        seen.emplace(std::move(key), n);
        step_result r = step(st, alg, ctx);
        if (!r.next) return std::nullopt;  // cannot happen for quadratic input
        st = *r.next;
    }
    return std::nullopt;
}

// Classify the expansion of a quadratic irrational. Periodicity is detected
// by exact state repetition; non-periodicity is certified only where the
// survey licenses it: the Ooto sign test and the two-negative-embeddings
// test for Ruban, the de Weger sign test for Schneider. The Browkin-family
// algorithms have no sound certificate, so they report Periodic or
// Undetermined.
inline classification classify_quadratic(const qp_number& x, algorithm_id alg,
                                         const padic_context& ctx) {
    if (!x.is_quadratic())
        throw cf_error(error_code::bad_input, "classify_quadratic needs a quadratic input");
    const integer D = x.quad().D;
    long phase_mod = algorithm_phase_modulus(alg);
    std::unordered_map<std::string, long> seen;
    expansion_state st{x, 0};
    classification out;

    for (long n = 0; n < ctx.step_budget; ++n) {
        std::string key = detail::state_key(st.alpha, n % phase_mod);
        auto it = seen.find(key);
        if (it != seen.end()) {
            out.v = classification::verdict::periodic;
            out.pre_period = it->second;
            out.period = n - it->second;
            out.steps_used = n;
            return out;
        }
        seen.emplace(std::move(key), n);

        const auto& q = st.alpha.quad();
        step_result r = step(st, alg, ctx);
        if (!r.next) throw cf_error(error_code::bad_input, "quadratic expansion terminated");
        const auto& qn = r.next->alpha.quad();

        if (alg == algorithm_id::ruban) {
            if (q.P * q.Q <= 0 && qn.P * qn.P > rational(D)) {
                out.v = classification::verdict::not_periodic;
                out.cert = certificate::ooto_sign;
                out.steps_used = n + 1;
                return out;
            }
            if (D > 0) {
                int s1 = detail::sign_plus_sqrt(q.P, D) * sgn(q.Q);
                int s2 = detail::sign_minus_sqrt(q.P, D) * sgn(q.Q);
                if (s1 < 0 && s2 < 0) {
                    out.v = classification::verdict::not_periodic;
                    out.cert = certificate::two_negative_embeddings;
                    out.steps_used = n + 1;
                    return out;
                }
            }
        } else if (alg == algorithm_id::schneider) {
            if (q.P * q.Q < 0 && qn.P * qn.P > rational(D)) {
                out.v = classification::verdict::not_periodic;
                out.cert = certificate::de_weger_sign;
                out.steps_used = n + 1;
                return out;
            }
        }
        st = *r.next;
    }
    out.v = classification::verdict::undetermined;
    out.steps_used = ctx.step_budget;
    return out;
}

// Galois-type predicates for pure periodicity. Browkin I: |x|_p > 1 and
// |conj|_p < 1 (iff among periodic expansions). MrST: |x|_p >= 1 and
// |conj|_p < 1 (iff). Browkin II: |x|_p = 1 and |conj|_p < 1, a necessary
// condition only.
inline bool purely_periodic_predicate(const qp_number& x, algorithm_id alg,
                                      const padic_context& ctx) {
    if (!x.is_quadratic())
        throw cf_error(error_code::bad_input, "predicate needs a quadratic input");
    extended_val v = valuation(x, ctx);
    extended_val vbar = valuation(x.conjugate(), ctx);
    switch (alg) {
        case algorithm_id::browkin1: return v < 0l && vbar > 0l;
        case algorithm_id::mr_st: return v <= 0l && vbar > 0l;
        case algorithm_id::browkin2: return v == 0l && vbar > 0l;
        default:
            throw cf_error(error_code::unsupported_algorithm,
                           "no pure-periodicity predicate for this algorithm");
    }
}

// Pre-period length constraints for sqrt(D) inputs: Browkin II allows 1 or
// any even length; MrST forces 1 when v_p(sqrt D) <= 0 and 2 otherwise.
// Vacuously true for other inputs and algorithms.
inline bool preperiod_constraints(const qp_number& x, algorithm_id alg,
                                  const classification& found, const padic_context& ctx) {
    if (found.v != classification::verdict::periodic)
        throw cf_error(error_code::bad_input, "preperiod_constraints needs a Periodic verdict");
    bool sqrt_form = x.is_quadratic() && x.quad().P == 0 && x.quad().Q == 1;
    if (!sqrt_form) return true;
    long pre = found.pre_period;
    if (alg == algorithm_id::browkin2) return pre == 1 || pre % 2 == 0;
    if (alg == algorithm_id::mr_st) {
        long k0 = vp_int(x.quad().D, ctx.p) / 2;
        return pre == (k0 <= 0 ? 1 : 2);
    }
    return true;
}

// Reduced basis of the approximation lattice
//   Gamma_n = {(A, B) in Z^2 : |B x - A|_p <= p^{-n}},
// starting from {(p^n, 0), (r_n, 1)} with r_n = x mod p^n and reduced by
// Lagrange-Gauss under the Euclidean norm; v1 is a shortest vector. Inputs
// with v_p(x) < 0 are scaled by p^shift first, shift reported.
struct lattice_basis {
    std::array<integer, 2> v1{integer(0), integer(0)};
    std::array<integer, 2> v2{integer(0), integer(0)};
    long shift = 0;
};

namespace detail {

inline integer round_div(const integer& a, const integer& b) {  // b > 0
    integer q, r;
    mpz_fdiv_qr(q.get_mpz_t(), r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    if (2 * r > b) ++q;
    return q;
}

// x mod p^k for x in Z_p, as an integer in [0, p^k).
inline integer residue_mod_pk(const qp_number& x, long k, const padic_context& ctx) {
    integer pk = pow_p(ctx.p, k);
    if (x.is_rational()) return unit_mod(x.rat(), pk);
    const auto& q = x.quad();
    sqrt_shape sh = split_sqrt(q.D, ctx.p);
    long lift = k + vp_rational(q.Q, ctx.p).v - sh.k0 + ctx.precision_guard;
    if (lift < 1) lift = 1;
    integer s = sqrt_unit_lift(sh.dprime, ctx.p, lift) * pow_p(ctx.p, sh.k0);
    rational approx = (q.P + rational(s)) / q.Q;
    return unit_mod(approx, pk);
}

}  // namespace detail

inline lattice_basis approximation_lattice(const qp_number& x, long n, const padic_context& ctx) {
    if (n < 1) throw cf_error(error_code::bad_input, "lattice level must be >= 1");
    lattice_basis out;
    qp_number y = x;
    extended_val v = valuation(x, ctx);
    if (v.finite && v.v < 0) {
        out.shift = -v.v;
        y = x * rational(pow_p(ctx.p, out.shift));
    }
    integer r = detail::residue_mod_pk(y, n, ctx);
    out.v1 = {pow_p(ctx.p, n), integer(0)};
    out.v2 = {r, integer(1)};

    auto norm2 = [](const std::array<integer, 2>& v) { return v[0] * v[0] + v[1] * v[1]; };
    auto dot = [](const std::array<integer, 2>& a, const std::array<integer, 2>& b) {
        return a[0] * b[0] + a[1] * b[1];
    };
    while (true) {
        if (norm2(out.v2) < norm2(out.v1)) std::swap(out.v1, out.v2);
        integer mu = detail::round_div(dot(out.v1, out.v2), norm2(out.v1));
        if (mu == 0) break;
        out.v2[0] -= mu * out.v1[0];
        out.v2[1] -= mu * out.v1[1];
    }
    return out;
}

}  // namespace pcf
