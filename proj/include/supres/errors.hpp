#pragma once

#include <stdexcept>
#include <string>

namespace supres {

// User/data-level failures: bad inputs, bad files, unreachable targets.
// The CLI maps these to exit code 2.
struct UserError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Violations of internal invariants: these signal a bug upstream, not bad
// input. The CLI maps these to exit code 3.
struct InternalError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ShapeMismatch : UserError {
    using UserError::UserError;
};

struct InvalidArgument : UserError {
    using UserError::UserError;
};

// Inverse transform of a spectrum that should have been conjugate-symmetric
// left a non-negligible imaginary part.
struct SymmetryViolation : InternalError {
    using InternalError::InternalError;
};

struct NonPositiveMu : UserError {
    using UserError::UserError;
};

struct NonPositiveSigma : UserError {
    using UserError::UserError;
};

struct ZeroSignal : UserError {
    using UserError::UserError;
};

// All per-group residual coefficients vanish: the observation is exactly
// representable and whiteness-based selection is ill-posed.
struct ZeroResidualSpectrum : UserError {
    using UserError::UserError;
};

struct TargetUnreachable : UserError {
    using UserError::UserError;
};

struct SingularSystem : UserError {
    using UserError::UserError;
};

struct EvenBand : UserError {
    using UserError::UserError;
};

struct IdenticalImages : UserError {
    using UserError::UserError;
};

struct UnsupportedFormat : UserError {
    using UserError::UserError;
};

struct MalformedHeader : UserError {
    using UserError::UserError;
};

struct TruncatedData : UserError {
    using UserError::UserError;
};

struct IoFailure : UserError {
    using UserError::UserError;
};

}  // namespace supres
