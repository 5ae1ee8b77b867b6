#ifndef FSDIFF_ERROR_HPP
#define FSDIFF_ERROR_HPP

#include <stdexcept>
#include <string>

namespace fsdiff {

// Stable error taxonomy. Every throwing operation in the library raises
// Error with one of these codes; the CLI maps them to a JSON envelope and
// to exit status 1 (validation / parameter regime) or 2 (numeric failure).
enum class ErrorCode {
    DomainError,                // argument outside a mathematical domain
    NonconvergentSeries,        // 2F1 series exceeded the term cap
    DegenerateContinuation,     // (a-b) integer-degenerate in Eq. (B.4)
    MomentDoesNotExist,         // moment order too high for beta
    TooFewPolynomials,          // beta <= 4: no normalizable F1
    IndexOutOfSystem,           // polynomial index beyond the finite system
    StepTooLarge,               // theta*dt beyond the stability guard
    DegenerateSample,           // zero-variance subsample in the ACF
    MomentInversionFailed,      // sample moments inconsistent with FS law
    NotPositiveDefinite,        // covariance not PD, no inverse square root
    SpectralHypothesisViolated, // alpha <= 2 or on the even lattice
    QuadratureNotConverged,     // tail/refinement bound failed
    OutsideConvergence,         // f4 series argument outside |beta/(alpha x)|<1
    UnclassifiedParameter,      // boundary theorem hypothesis violated
};

inline const char* error_code_name(ErrorCode c) {
    switch (c) {
        case ErrorCode::DomainError:                return "DOMAIN_ERROR";
        case ErrorCode::NonconvergentSeries:        return "NONCONVERGENT_SERIES";
        case ErrorCode::DegenerateContinuation:     return "DEGENERATE_CONTINUATION";
        case ErrorCode::MomentDoesNotExist:         return "MOMENT_DOES_NOT_EXIST";
        case ErrorCode::TooFewPolynomials:          return "TOO_FEW_POLYNOMIALS";
        case ErrorCode::IndexOutOfSystem:           return "INDEX_OUT_OF_SYSTEM";
        case ErrorCode::StepTooLarge:               return "STEP_TOO_LARGE";
        case ErrorCode::DegenerateSample:           return "DEGENERATE_SAMPLE";
        case ErrorCode::MomentInversionFailed:      return "MOMENT_INVERSION_FAILED";
        case ErrorCode::NotPositiveDefinite:        return "NOT_POSITIVE_DEFINITE";
        case ErrorCode::SpectralHypothesisViolated: return "SPECTRAL_HYPOTHESIS";
        case ErrorCode::QuadratureNotConverged:     return "QUADRATURE_NOT_CONVERGED";
        case ErrorCode::OutsideConvergence:         return "OUTSIDE_CONVERGENCE";
        case ErrorCode::UnclassifiedParameter:      return "UNCLASSIFIED_PARAMETER";
    }
    return "UNKNOWN";
}

// Exit status the CLI uses for a given failure class.
inline int error_exit_status(ErrorCode c) {
    switch (c) {
        case ErrorCode::DomainError:
        case ErrorCode::MomentDoesNotExist:
        case ErrorCode::TooFewPolynomials:
        case ErrorCode::IndexOutOfSystem:
        case ErrorCode::StepTooLarge:
        case ErrorCode::SpectralHypothesisViolated:
        case ErrorCode::OutsideConvergence:
        case ErrorCode::UnclassifiedParameter:
            return 1; // validation: the request itself is inadmissible
        default:
            return 2; // numeric failure while computing an admissible request
    }
}

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& msg)
        : std::runtime_error(msg), code_(code) {}
    ErrorCode code() const noexcept { return code_; }
    const char* code_name() const noexcept { return error_code_name(code_); }
private:
    ErrorCode code_;
};

} // namespace fsdiff

#endif
