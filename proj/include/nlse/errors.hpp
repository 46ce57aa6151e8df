#pragma once

#include <stdexcept>
#include <string>

namespace nlse {

// Base class for all library failures so callers can map them to exit codes.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Configuration / input parsing problems (CLI exit code 1).
struct ConfigError : Error {
    using Error::Error;
};

// Numerical / constructive failures (CLI exit code 2).
struct NoMetricError : Error {
    using Error::Error;
};
struct ZeroCrossingError : Error {
    using Error::Error;
};
struct DegenerateWeightError : Error {
    using Error::Error;
};
struct SingularFamilyError : Error {
    using Error::Error;
};
struct NotNormalizableError : Error {
    using Error::Error;
};
struct InconsistentRootsError : Error {
    using Error::Error;
};
struct TableRangeError : Error {
    using Error::Error;
};

// Field amplitude exceeded the blow-up threshold during time evolution
// (CLI exit code 3 when growth was not requested).
struct BlowupError : Error {
    explicit BlowupError(double t, double amplitude)
        : Error("field amplitude " + std::to_string(amplitude) +
                " exceeded blow-up threshold at t = " + std::to_string(t)),
          t_blowup(t),
          max_amplitude(amplitude) {}
    double t_blowup;
    double max_amplitude;
};

}  // namespace nlse
