#pragma once

#include <stdexcept>
#include <string>

namespace pushcert {

/// Broad failure classes; the CLI maps them onto exit codes.
enum class ErrorKind {
    Validation,            // malformed or inconsistent user input
    MissingMapping,        // a measure atom has no image under a finite map
    DimensionMismatch,     // incompatible point / value dimensions
    DomainMismatch,        // finite maps with different domains
    ShapeMismatch,         // coupling matrix does not fit the supports
    TooManyAtoms,          // subset enumeration cap exceeded
    LimitExceeded,         // transport enumeration limit hit before a sound verdict
    BudgetExceeded,        // oracle family larger than the configured budget
    OutOfDomain,           // argument outside a sampler's or formula's domain
    SupportsOverlap,       // demo construction requires disjoint supports
    NotInConstraintSet,    // certification input does not satisfy the constraint
    Internal,              // invariant recomputation failed; indicates a bug
};

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& message)
        : std::runtime_error(message), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& message) {
    throw Error(kind, message);
}

} // namespace pushcert
