#pragma once

#include <gmpxx.h>

#include "pcf/errors.hpp"

namespace pcf {

// Digit representative set for Z/pZ: {0..p-1} vs {-(p-1)/2..(p-1)/2}.
enum class convention { standard, balanced };

inline bool is_odd_prime(long p) {
    if (p < 3 || p % 2 == 0) return false;
    mpz_class z(p);
    return mpz_probab_prime_p(z.get_mpz_t(), 40) != 0;
}

// Ambient parameters shared by every computation: the odd prime, the digit
// convention, a window of extra digits for internal lifts, and the default
// step cap for expansions.
struct padic_context {
    long p;
    convention conv;
    int precision_guard;
    long step_budget;

    padic_context(long p_, convention c, int guard = 4, long budget = 10000)
        : p(p_), conv(c), precision_guard(guard), step_budget(budget) {
        if (!is_odd_prime(p)) throw cf_error(error_code::bad_input, "p must be an odd prime");
        if (precision_guard < 1) throw cf_error(error_code::bad_input, "precision_guard must be >= 1");
        if (step_budget < 1) throw cf_error(error_code::bad_input, "step_budget must be >= 1");
    }

    bool balanced() const { return conv == convention::balanced; }

    padic_context with_budget(long budget) const {
        return padic_context(p, conv, precision_guard, budget);
    }
    padic_context with_convention(convention c) const {
        return padic_context(p, c, precision_guard, step_budget);
    }
};

}  // namespace pcf
