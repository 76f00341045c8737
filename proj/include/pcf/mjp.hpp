#pragma once

#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "pcf/analysis.hpp"

namespace pcf {

// Multidimensional (Jacobi-Perron) expansion of an m-tuple: quotient rows
// (a_n^(1)..a_n^(m)) with the implicit a_n^(m+1) = 1.
struct mjp_expansion {
    long m = 1;
    std::vector<std::vector<rational>> rows;
    expansion_status status;
    padic_context ctx;

    mjp_expansion(padic_context c) : ctx(c) {}

    long stored_rows() const { return static_cast<long>(rows.size()); }

    bool index_ok(long n) const {
        if (n < 0) return false;
        return status.is_periodic() || n < stored_rows();
    }

    const std::vector<rational>& row(long n) const {
        if (!index_ok(n)) throw cf_error(error_code::index_beyond_finite, "row out of range");
        if (n < stored_rows()) return rows[static_cast<size_t>(n)];
        long pre = status.pre_period, per = status.period;
        return rows[static_cast<size_t>(pre + (n - pre) % per)];
    }
};

namespace detail {

// Coordinate of a tuple state: u + w*sqrt(D) over the tuple's shared field
// (w = 0 tags a rational coordinate).
struct jp_coord {
    rational u, w;
};

struct jp_field {
    std::optional<integer> D;  // absent for all-rational tuples
};

inline jp_coord jp_sub(const jp_coord& a, const rational& r) { return {a.u - r, a.w}; }

inline jp_coord jp_div(const jp_coord& a, const jp_coord& b, const jp_field& f) {
    if (b.w == 0) {
        if (b.u == 0) throw cf_error(error_code::division_by_zero, "zero denominator coordinate");
        return {a.u / b.u, a.w / b.u};
    }
    rational D(*f.D);
    rational norm = b.u * b.u - b.w * b.w * D;
    return {(a.u * b.u - a.w * b.w * D) / norm, (a.w * b.u - a.u * b.w) / norm};
}

inline qp_number jp_to_qp(const jp_coord& c, const jp_field& f) {
    if (c.w == 0) return qp_number(c.u);
    return qp_number::quadratic(c.u / c.w, 1 / c.w, *f.D);
}

inline std::string jp_key(const std::vector<jp_coord>& cs) {
    std::string k;
    for (const auto& c : cs) k += c.u.get_str() + "," + c.w.get_str() + ";";
    return k;
}

}  // namespace detail

// p-adic Jacobi-Perron expansion: a_n^(i) = s(alpha_n^(i)),
//   alpha_{n+1}^(1) = 1/(alpha_n^(m) - a_n^(m)),
//   alpha_{n+1}^(i) = (alpha_n^(i-1) - a_n^(i-1))/(alpha_n^(m) - a_n^(m)).
// Finite when alpha_n^(m) = a_n^(m); Periodic on exact tuple-state
// repetition; Truncated at the budget. Dimension 1 is exactly Browkin I.
// Quadratic coordinates must share one field (UnsupportedInput otherwise).
inline mjp_expansion jp_expand(const std::vector<qp_number>& xs, const padic_context& ctx) {
    if (!ctx.balanced())
        throw cf_error(error_code::convention_mismatch, "Jacobi-Perron needs the balanced convention");
    if (xs.empty()) throw cf_error(error_code::bad_input, "empty tuple");
    long m = static_cast<long>(xs.size());

    detail::jp_field field;
    for (const qp_number& x : xs) {
        if (!x.is_quadratic()) continue;
        if (field.D && *field.D != x.quad().D)
            throw cf_error(error_code::unsupported_input,
                           "tuple coordinates over distinct quadratic fields");
        field.D = x.quad().D;
    }
    std::vector<detail::jp_coord> alpha;
    for (const qp_number& x : xs) {
        if (x.is_rational())
            alpha.push_back({x.rat(), rational(0)});
        else
            alpha.push_back({x.quad().P / x.quad().Q, 1 / x.quad().Q});
    }

    mjp_expansion e(ctx);
    e.m = m;
    std::unordered_map<std::string, long> seen;
    for (long n = 0; n < ctx.step_budget; ++n) {
        std::string key = detail::jp_key(alpha);
        auto it = seen.find(key);
        if (it != seen.end()) {
            e.status = expansion_status::periodic(it->second, n - it->second);
            return e;
        }
        seen.emplace(std::move(key), n);

        std::vector<rational> a;
        a.reserve(static_cast<size_t>(m));
        for (const auto& c : alpha) a.push_back(floor_s(detail::jp_to_qp(c, field), ctx));
        e.rows.push_back(a);

        const detail::jp_coord& last = alpha[static_cast<size_t>(m - 1)];
        if (last.w == 0 && last.u == a[static_cast<size_t>(m - 1)]) {
            e.status = expansion_status::finite();
            return e;
        }
        detail::jp_coord den = detail::jp_sub(last, a[static_cast<size_t>(m - 1)]);
        std::vector<detail::jp_coord> next(static_cast<size_t>(m), detail::jp_coord{});
        next[0] = detail::jp_div({rational(1), rational(0)}, den, field);
        for (long i = 2; i <= m; ++i)
            next[static_cast<size_t>(i - 1)] = detail::jp_div(
                detail::jp_sub(alpha[static_cast<size_t>(i - 2)], a[static_cast<size_t>(i - 2)]),
                den, field);
        alpha = std::move(next);
    }
    e.status = expansion_status::truncated(e.stored_rows());
    return e;
}

// Convergent numerators A_n^(i), i = 1..m+1, with seeds A_{-j}^(i) = delta_ij
// and A_n^(i) = sum_{j=1}^{m+1} a_n^(j) A_{n-j}^(i) (a_n^(m+1) = 1). The
// returned table is conv[n][i-1] = A_n^(i); convergents are A_n^(i)/A_n^(m+1).
inline std::vector<std::vector<rational>> jp_convergents(const mjp_expansion& e, long upto) {
    if (!e.index_ok(upto)) throw cf_error(error_code::index_beyond_finite, "row out of range");
    long m = e.m;
    // window[j][i-1] = A_{n-j}^(i) for j = 1..m+1
    std::vector<std::vector<rational>> window(static_cast<size_t>(m + 1),
                                              std::vector<rational>(static_cast<size_t>(m + 1)));
    for (long j = 1; j <= m + 1; ++j)
        for (long i = 1; i <= m + 1; ++i)
            window[static_cast<size_t>(j - 1)][static_cast<size_t>(i - 1)] =
                rational(i == j ? 1 : 0);

    std::vector<std::vector<rational>> out;
    for (long n = 0; n <= upto; ++n) {
        const std::vector<rational>& a = e.row(n);
        std::vector<rational> An(static_cast<size_t>(m + 1), rational(0));
        for (long i = 1; i <= m + 1; ++i) {
            rational acc(0);
            for (long j = 1; j <= m + 1; ++j) {
                rational aj = j <= m ? a[static_cast<size_t>(j - 1)] : rational(1);
                acc += aj * window[static_cast<size_t>(j - 1)][static_cast<size_t>(i - 1)];
            }
            An[static_cast<size_t>(i - 1)] = acc;
        }
        out.push_back(An);
        window.pop_back();
        window.insert(window.begin(), An);
    }
    return out;
}

// Prop MT1 pattern over all stored rows: v_p(a_n^(1)) <= 0 and
// v_p(a_n^(1)) < v_p(a_n^(i)) for i = 2..m+1 (a^(m+1) = 1 forces
// v_p(a_n^(1)) < 0).
inline bool jp_check_convergence(const mjp_expansion& e) {
    for (long n = 0; n < e.stored_rows(); ++n) {
        const auto& a = e.row(n);
        extended_val v1 = vp_rational(a[0], e.ctx.p);
        if (!(v1 <= 0l)) return false;
        if (!(v1 < 0l)) return false;  // against a^(m+1) = 1
        for (size_t i = 1; i < a.size(); ++i)
            if (!(v1 < vp_rational(a[i], e.ctx.p))) return false;
    }
    return true;
}

// Strong-convergence profile v_p(A_n^(i) - x^(i) A_n^(m+1)) per coordinate,
// +infinity on exact recovery.
inline std::vector<std::vector<extended_val>> jp_strong_convergence_profile(
    const mjp_expansion& e, const std::vector<qp_number>& xs, long upto) {
    long m = e.m;
    if (static_cast<long>(xs.size()) != m)
        throw cf_error(error_code::bad_input, "tuple size mismatch");
    std::vector<std::vector<rational>> conv = jp_convergents(e, upto);
    std::vector<std::vector<extended_val>> out(static_cast<size_t>(m));
    for (long n = 0; n <= upto; ++n) {
        const rational& C = conv[static_cast<size_t>(n)][static_cast<size_t>(m)];
        for (long i = 0; i < m; ++i) {
            const rational& A = conv[static_cast<size_t>(n)][static_cast<size_t>(i)];
            const qp_number& x = xs[static_cast<size_t>(i)];
            extended_val v;
            if (x.is_rational()) {
                v = vp_rational(A - x.rat() * C, e.ctx.p);
            } else {
                const auto& q = x.quad();
                rational u = A - (q.P / q.Q) * C;
                rational w = -C / q.Q;
                if (w == 0)
                    v = vp_rational(u, e.ctx.p);
                else
                    v = extended_val::of(detail::quad_pair_valuation(u, w, q.D, e.ctx));
            }
            out[static_cast<size_t>(i)].push_back(v);
        }
    }
    return out;
}

}  // namespace pcf
