#pragma once

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace bdlab {

inline constexpr const char* kVersion = "0.1.0";

inline constexpr double kInf = std::numeric_limits<double>::infinity();

// Thrown when the 1-D minimization of phi(lambda)/lambda cannot bracket an
// interior minimum below the theta_max cap. Signals a kernel violating the
// standing moment-growth assumption.
struct BracketFailure : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Requested wave/tilt speed lies below the critical speed a.
struct SpeedBelowCritical : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// More than mass_tol of mass left the spatial grid during free evolution.
struct MassEscape : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// shave() was asked to trim a density with total mass below 1 - mass_tol.
struct InsufficientMass : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// An iterative solver hit its iteration cap before meeting its tolerance.
struct NoConvergence : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// The tilted kernel has non-negative drift: the reflected chain is not
// positive recurrent, so its empirical law does not stabilize.
struct TransientWarning : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Kernel or configuration input rejected at validation.
struct ValidationError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace bdlab
