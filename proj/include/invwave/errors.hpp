#pragma once

#include <stdexcept>
#include <string>

namespace invwave {

// Error hierarchy mirrored by the CLI exit codes:
//   ConfigError -> 2, AssumptionError -> 3, AnalysisError -> 4, NumericsError -> 5.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Malformed or ill-signed configuration / model spec.
struct ConfigError : Error {
    using Error::Error;
};

// A structural assumption of the model family does not hold (no predator
// carrying level, no predator ceiling, ...).
struct AssumptionError : Error {
    using Error::Error;
};

// Post-processing cannot proceed (no front, degenerate fit window, window
// outside the grid, ...).
struct AnalysisError : Error {
    using Error::Error;
};

struct FrontNotPresent : AnalysisError {
    using AnalysisError::AnalysisError;
};

// Blow-up, CFL violation, non-finite evaluator output.
struct NumericsError : Error {
    using Error::Error;
};

}  // namespace invwave
