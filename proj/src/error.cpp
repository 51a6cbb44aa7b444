#include "hpe/error.hpp"

namespace hpe {

const char* to_string(ErrorKind k)
{
    switch (k) {
    case ErrorKind::InvalidInput: return "InvalidInput";
    case ErrorKind::InvalidParameters: return "InvalidParameters";
    case ErrorKind::InexactDivision: return "InexactDivision";
    case ErrorKind::PrecisionExhausted: return "PrecisionExhausted";
    case ErrorKind::SeedMomentsMissing: return "SeedMomentsMissing";
    case ErrorKind::RecurrenceSingular: return "RecurrenceSingular";
    case ErrorKind::QuadratureNotConverged: return "QuadratureNotConverged";
    case ErrorKind::NonNormalIndex: return "NonNormalIndex";
    case ErrorKind::InsufficientMoments: return "InsufficientMoments";
    case ErrorKind::NotApplicable: return "NotApplicable";
    case ErrorKind::TailNotVanishing: return "TailNotVanishing";
    case ErrorKind::AsymmetryDetected: return "AsymmetryDetected";
    case ErrorKind::PrecisionCapExceeded: return "PrecisionCapExceeded";
    case ErrorKind::AmbiguousAtPrecision: return "AmbiguousAtPrecision";
    case ErrorKind::PoleCollision: return "PoleCollision";
    case ErrorKind::OverlapDetected: return "OverlapDetected";
    case ErrorKind::IdentityViolation: return "IdentityViolation";
    }
    return "Unknown";
}

int exit_code(ErrorKind k)
{
    switch (k) {
    case ErrorKind::NonNormalIndex:
        return 2;
    case ErrorKind::InexactDivision:
    case ErrorKind::TailNotVanishing:
    case ErrorKind::AsymmetryDetected:
    case ErrorKind::IdentityViolation:
        return 3;
    case ErrorKind::PrecisionExhausted:
    case ErrorKind::PrecisionCapExceeded:
    case ErrorKind::AmbiguousAtPrecision:
    case ErrorKind::QuadratureNotConverged:
        return 4;
    default:
        return 1;
    }
}

}  // namespace hpe
