#ifndef SPECDESIGN_ERRORS_HPP
#define SPECDESIGN_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace specdesign {

// Base class for every error raised by the library.
struct Error : std::runtime_error {
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// Input/validation problems (bad config, malformed data, dimension clashes).
struct ValidationError : Error {
    using Error::Error;
};

struct DimensionMismatchError : ValidationError {
    using ValidationError::ValidationError;
};

struct ConstraintViolatedError : ValidationError {
    using ValidationError::ValidationError;
};

struct ChainConstraintError : ValidationError {
    using ValidationError::ValidationError;
};

struct ZeroRateError : ValidationError {
    using ValidationError::ValidationError;
};

struct ZeroStateError : ValidationError {
    using ValidationError::ValidationError;
};

struct ZeroFunctionError : ValidationError {
    using ValidationError::ValidationError;
};

struct OracleMissingError : ValidationError {
    using ValidationError::ValidationError;
};

struct UnclassifiedConstantsError : ValidationError {
    using ValidationError::ValidationError;
};

// Structural/algebraic failures of a construction.
struct DegenerateWronskianError : Error {
    using Error::Error;
};

struct SingularMatrixError : Error {
    using Error::Error;
};

struct SingularLeadingError : SingularMatrixError {
    using SingularMatrixError::SingularMatrixError;
};

struct SetInconsistentError : Error {
    using Error::Error;
};

struct EmptyImageError : Error {
    using Error::Error;
};

// Term powers above the cap signal a runaway computation, not valid input.
struct PowerCapError : Error {
    using Error::Error;
};

// Internal cross-checks (two algebraic routes disagreeing) raise this.
struct AlgebraError : Error {
    using Error::Error;
};

} // namespace specdesign

#endif
