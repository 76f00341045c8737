#pragma once

#include <string>
#include <vector>

#include "pcf/context.hpp"
#include "pcf/rational.hpp"

namespace pcf {

// The six expansion policies. Schneider and Ruban run on standard digits,
// the Browkin family on balanced digits.
enum class algorithm_id { schneider, ruban, browkin1, browkin2, mrs3, mr_st };

inline const char* algorithm_name(algorithm_id a) {
    switch (a) {
        case algorithm_id::schneider: return "schneider";
        case algorithm_id::ruban: return "ruban";
        case algorithm_id::browkin1: return "browkin1";
        case algorithm_id::browkin2: return "browkin2";
        case algorithm_id::mrs3: return "mrs3";
        case algorithm_id::mr_st: return "mr-st";
    }
    return "?";
}

inline bool algorithm_balanced(algorithm_id a) {
    return a == algorithm_id::browkin1 || a == algorithm_id::browkin2 ||
           a == algorithm_id::mrs3 || a == algorithm_id::mr_st;
}

// Phase modulus for policies whose floor choice depends on the step index.
inline long algorithm_phase_modulus(algorithm_id a) {
    switch (a) {
        case algorithm_id::browkin2:
        case algorithm_id::mr_st: return 2;
        case algorithm_id::mrs3: return 3;
        default: return 1;
    }
}

struct expansion_status {
    enum class kind { finite, periodic, truncated };
    kind k = kind::finite;
    long pre_period = 0;  // periodic only
    long period = 0;      // periodic only
    long steps = 0;       // truncated only

    static expansion_status finite() { return {kind::finite, 0, 0, 0}; }
    static expansion_status periodic(long pre, long per) { return {kind::periodic, pre, per, 0}; }
    static expansion_status truncated(long steps) { return {kind::truncated, 0, 0, steps}; }

    bool is_finite() const { return k == kind::finite; }
    bool is_periodic() const { return k == kind::periodic; }
    bool is_truncated() const { return k == kind::truncated; }

    friend bool operator==(const expansion_status& a, const expansion_status& b) {
        if (a.k != b.k) return false;
        switch (a.k) {
            case kind::finite: return true;
            case kind::periodic: return a.pre_period == b.pre_period && a.period == b.period;
            case kind::truncated: return a.steps == b.steps;
        }
        return false;
    }
};

// A continued fraction record: partial quotients a_i, partial numerators
// aligned as numerators[i] = b_{i+1} (the numerator between quotient i and
// quotient i+1, or between the last stored quotient and the periodic tail).
// Simple expansions carry all-1 numerators; Schneider carries powers of p.
// A periodic record stores the pre-period plus exactly one period and
// synthesizes further terms on demand.
struct expansion {
    std::vector<rational> quotients;
    std::vector<rational> numerators;
    expansion_status status;
    std::string algorithm;  // "ruban", "browkin1", ..., or an external tag
    padic_context ctx;

    expansion(padic_context c) : ctx(c) {}

    long stored_count() const { return static_cast<long>(quotients.size()); }

    // Number of addressable quotients: finite length, or unbounded (-1) for
    // periodic records.
    bool index_ok(long i) const {
        if (i < 0) return false;
        if (status.is_periodic()) return true;
        return i < stored_count();
    }

    long fold_index(long i) const {
        if (i < stored_count()) return i;
        if (!status.is_periodic())
            throw cf_error(error_code::index_beyond_finite, "quotient index out of range");
        long pre = status.pre_period, per = status.period;
        return pre + (i - pre) % per;
    }

    const rational& quotient(long i) const { return quotients[static_cast<size_t>(fold_index(i))]; }

    // b_{i+1}: numerator below quotient i. Out-of-range for the final stored
    // quotient of a finite record (no tail exists there).
    const rational& numerator_below(long i) const {
        long j = fold_index(i);
        if (j >= static_cast<long>(numerators.size()))
            throw cf_error(error_code::index_beyond_finite, "numerator index out of range");
        return numerators[static_cast<size_t>(j)];
    }

    // b_i: numerator entering quotient i (b_0 := 1 by convention).
    rational numerator_entering(long i) const {
        if (i == 0) return rational(1);
        return numerator_below(i - 1);
    }

    bool simple() const {
        for (const auto& b : numerators)
            if (b != 1) return false;
        return true;
    }

    friend bool operator==(const expansion& a, const expansion& b) {
        return a.quotients == b.quotients && a.numerators == b.numerators &&
               a.status == b.status && a.algorithm == b.algorithm && a.ctx.p == b.ctx.p &&
               a.ctx.conv == b.ctx.conv;
    }
};

struct convergent {
    rational A;
    rational B;
    long index = 0;
};

}  // namespace pcf
