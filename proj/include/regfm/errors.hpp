#pragma once

#include <stdexcept>
#include <string>

namespace regfm {

// Base for all math-level failures. The CLI driver converts these into
// failed checks instead of aborting.
struct MathError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A one-form failed the closedness test d(omega) = 0. Carries the first
// violated index pair (0-based) for diagnostics.
struct NotClosedError : MathError {
    int j, k;
    NotClosedError(int j_, int k_, const std::string& diff)
        : MathError("one-form not closed at pair (" + std::to_string(j_ + 1) + "," +
                    std::to_string(k_ + 1) + "): d_j w_k - d_k w_j = " + diff),
          j(j_), k(k_) {}
};

struct SingularPivotError : MathError {
    using MathError::MathError;
};

struct DegenerateVelocitiesError : MathError {
    using MathError::MathError;
};

struct PreconditionFailedError : MathError {
    using MathError::MathError;
};

struct NonUniqueError : MathError {
    using MathError::MathError;
};

struct InconsistentError : MathError {
    using MathError::MathError;
};

struct CflViolationError : MathError {
    using MathError::MathError;
};

struct BlowupDetectedError : MathError {
    using MathError::MathError;
};

// Configuration / input parsing problems (CLI exit code 2).
struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace regfm
