#pragma once

#include <stdexcept>
#include <string>

namespace pcf {

enum class error_code {
    non_residue,
    division_by_zero,
    schneider_domain,
    convention_mismatch,
    terminated,
    not_finite,
    inconsistent_period,
    index_beyond_finite,
    unsupported_algorithm,
    negative_valuation,
    degenerate_z,
    unsupported_input,
    bad_input,
};

inline const char* error_name(error_code c) {
    switch (c) {
        case error_code::non_residue: return "NonResidue";
        case error_code::division_by_zero: return "DivisionByZero";
        case error_code::schneider_domain: return "SchneiderDomain";
        case error_code::convention_mismatch: return "ConventionMismatch";
        case error_code::terminated: return "Terminated";
        case error_code::not_finite: return "NotFinite";
        case error_code::inconsistent_period: return "InconsistentPeriod";
        case error_code::index_beyond_finite: return "IndexBeyondFinite";
        case error_code::unsupported_algorithm: return "UnsupportedAlgorithm";
        case error_code::negative_valuation: return "NegativeValuation";
        case error_code::degenerate_z: return "DegenerateZ";
        case error_code::unsupported_input: return "UnsupportedInput";
        case error_code::bad_input: return "BadInput";
    }
    return "UnknownError";
}

class cf_error : public std::runtime_error {
public:
    error_code code;
    cf_error(error_code c, const std::string& msg)
        : std::runtime_error(std::string(error_name(c)) + ": " + msg), code(c) {}
};

}  // namespace pcf
