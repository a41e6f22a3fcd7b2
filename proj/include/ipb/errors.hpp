#ifndef IPB_ERRORS_HPP
#define IPB_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace ipb {

/// Error codes for every failure the library can report. Each operation
/// documents which codes it may throw; nothing else escapes.
enum class Errc {
    // core
    empty_conditioning_event,
    out_of_range,
    domain_mismatch,
    // lp
    malformed_program,
    unbounded_region,
    vertex_budget_exceeded,
    // consistency
    empty_credal_set,
    // jensen
    boundary_point,
    conjugacy_violation,
    bad_exponents,
    negative_moment,
    // tailbounds
    non_positive_threshold,
    non_positive_epsilon,
    negativity_flag_missing,
    empty_constrained_credal_set,
    zero_lower_prevision,
    // cli
    parse_error,
    schema_error,
    dimension_error,
    unknown_identifier,
    evaluation_error,
    // generic contract violations (flag parameters asserted false, etc.)
    precondition_failed,
};

const char* errc_name(Errc code);

class Error : public std::runtime_error {
public:
    Error(Errc code, const std::string& message)
        : std::runtime_error(std::string(errc_name(code)) + ": " + message), code_(code) {}

    Errc code() const noexcept { return code_; }

private:
    Errc code_;
};

[[noreturn]] inline void raise(Errc code, const std::string& message) {
    throw Error(code, message);
}

} // namespace ipb

#endif
