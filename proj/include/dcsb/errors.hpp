// errors.hpp — exception hierarchy for the dcsb library

#pragma once

#include <stdexcept>
#include <string>

namespace dcsb {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct PoleOfGamma : Error { using Error::Error; };
struct DomainError : Error { using Error::Error; };
struct QuadratureFailure : Error { using Error::Error; };
struct RootFindingFailure : Error { using Error::Error; };
struct DegeneratePole : Error { using Error::Error; };
struct NoConvergence : Error { using Error::Error; };
struct ImaginaryLeak : Error { using Error::Error; };
struct ContourFailure : Error { using Error::Error; };
struct StepTooLarge : Error { using Error::Error; };
struct OracleMismatch : Error { using Error::Error; };
struct ConfigError : Error { using Error::Error; };
struct NoBracket : Error { using Error::Error; };

} // namespace dcsb
