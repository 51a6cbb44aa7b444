#pragma once

#include <stdexcept>
#include <string>

namespace hpe {

enum class ErrorKind {
    InvalidInput,
    InvalidParameters,
    InexactDivision,
    PrecisionExhausted,
    SeedMomentsMissing,
    RecurrenceSingular,
    QuadratureNotConverged,
    NonNormalIndex,
    InsufficientMoments,
    NotApplicable,
    TailNotVanishing,
    AsymmetryDetected,
    PrecisionCapExceeded,
    AmbiguousAtPrecision,
    PoleCollision,
    OverlapDetected,
    IdentityViolation
};

const char* to_string(ErrorKind k);

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& msg)
        : std::runtime_error(std::string(to_string(kind)) + ": " + msg), kind_(kind) {}
    ErrorKind kind() const { return kind_; }

private:
    ErrorKind kind_;
};

// process exit code for the command line tool
int exit_code(ErrorKind k);

}  // namespace hpe
