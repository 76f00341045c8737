#pragma once

#include <utility>
#include <variant>

#include "pcf/context.hpp"
#include "pcf/rational.hpp"

namespace pcf {

// Which p-adic square root of D a quadratic value refers to. The principal
// root is the one whose first nonzero digit is the smaller standard
// representative; for odd p that is the same residue class as the balanced
// rule's "positive first representative", so one resolution serves both
// conventions. The conjugate is its negation.
enum class branch_tag { principal, conjugate };

// Exact element of Q_p: either a rational or a quadratic irrational
// (P + sqrt(D))/Q over a fixed branch of sqrt(D).
//
// Quadratic values are canonicalized at construction: a conjugate-branch
// value (P + (-sqrt D))/Q is stored as ((-P) + sqrt(D))/(-Q) with the
// principal branch, so structural equality of (P, Q, D) is value equality
// within one field.
class qp_number {
public:
    struct quadratic_part {
        rational P;
        rational Q;
        integer D;
        branch_tag branch;  // always principal after canonicalization

        friend bool operator==(const quadratic_part& a, const quadratic_part& b) {
            return a.P == b.P && a.Q == b.Q && a.D == b.D && a.branch == b.branch;
        }
    };

    qp_number() : value_(rational(0)) {}
    explicit qp_number(rational r) : value_(std::move(r)) {}

    static qp_number from_rational(const integer& num, const integer& den) {
        return qp_number(make_rational(num, den));
    }

    static qp_number quadratic(rational P, rational Q, integer D,
                               branch_tag branch = branch_tag::principal) {
        if (Q == 0) throw cf_error(error_code::bad_input, "quadratic with Q = 0");
        if (D >= 0 && mpz_perfect_square_p(D.get_mpz_t()))
            throw cf_error(error_code::bad_input, "D must not be a perfect square");
        if (branch == branch_tag::conjugate) {
            P = -P;
            Q = -Q;
        }
        qp_number x;
        x.value_ = quadratic_part{std::move(P), std::move(Q), std::move(D), branch_tag::principal};
        return x;
    }

    bool is_rational() const { return std::holds_alternative<rational>(value_); }
    bool is_quadratic() const { return !is_rational(); }

    const rational& rat() const { return std::get<rational>(value_); }
    const quadratic_part& quad() const { return std::get<quadratic_part>(value_); }

    // Galois conjugate: sqrt(D) -> -sqrt(D); the identity on rationals.
    qp_number conjugate() const {
        if (is_rational()) return *this;
        const auto& q = quad();
        return quadratic(-q.P, -q.Q, q.D);
    }

    // Structural equality; sound value equality when both sides live over the
    // same D (the case for all states of one expansion). Cross-field value
    // equality is values_equal() below.
    friend bool operator==(const qp_number& a, const qp_number& b) {
        return a.value_ == b.value_;
    }

private:
    std::variant<rational, quadratic_part> value_;
};

inline qp_number operator+(const qp_number& x, const rational& r) {
    if (x.is_rational()) return qp_number(x.rat() + r);
    const auto& q = x.quad();
    return qp_number::quadratic(q.P + r * q.Q, q.Q, q.D);
}

inline qp_number operator-(const qp_number& x, const rational& r) {
    return x + rational(-r);
}

// 1/x for nonzero x. Quadratic: 1/((P+sqrt D)/Q) = ((-P)+sqrt D)/((D-P^2)/Q).
inline qp_number reciprocal(const qp_number& x) {
    if (x.is_rational()) {
        if (x.rat() == 0) throw cf_error(error_code::division_by_zero, "1/0");
        return qp_number(1 / x.rat());
    }
    const auto& q = x.quad();
    rational qq = (rational(q.D) - q.P * q.P) / q.Q;
    return qp_number::quadratic(-q.P, qq, q.D);
}

// x * r for rational r != 0.
inline qp_number operator*(const qp_number& x, const rational& r) {
    if (x.is_rational()) return qp_number(x.rat() * r);
    if (r == 0) throw cf_error(error_code::bad_input, "scaling a quadratic by zero");
    const auto& q = x.quad();
    return qp_number::quadratic(q.P, q.Q / r, q.D);
}

}  // namespace pcf
