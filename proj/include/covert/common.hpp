#pragma once

#include <complex>
#include <cstdint>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

namespace covert {

using cvec = std::vector<std::complex<double>>;
using rvec = std::vector<double>;

inline constexpr double kPi = std::numbers::pi;

// Precondition violations: bad parameter values, length mismatches,
// out-of-range symbols.
struct InvalidInput : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Preamble correlation peak did not clear the detection threshold.
struct SyncFailure : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Phase estimation requested on a pulse with zero pilot energy.
struct UnusablePilot : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// SNR estimation lacks pulse-bearing or empty slots.
struct InsufficientCalibration : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// An iterative numeric routine hit its budget before reaching the requested
// precision. Carries the partial result and its error estimate.
struct PrecisionNotReached : std::runtime_error {
    double partial_value;
    double partial_se;
    PrecisionNotReached(const std::string& msg, double value, double se)
        : std::runtime_error(msg), partial_value(value), partial_se(se) {}
};

// Linear-algebra breakdown (e.g. kernel matrix not positive definite even
// after jitter escalation).
struct NumericFailure : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Sign with the tie broken upward: sgn(0) = +1.
inline int sgn_pos(double x) { return x < 0.0 ? -1 : 1; }

}  // namespace covert
