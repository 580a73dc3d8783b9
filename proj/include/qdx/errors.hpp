#pragma once

#include <stdexcept>
#include <string>

namespace qdx {

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct NumericalError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct TruncationTooSmall : NumericalError {
    using NumericalError::NumericalError;
};

struct TruncationLeak : NumericalError {
    using NumericalError::NumericalError;
};

struct StepTooLarge : NumericalError {
    using NumericalError::NumericalError;
};

struct DimensionMismatch : NumericalError {
    using NumericalError::NumericalError;
};

struct NotAState : NumericalError {
    using NumericalError::NumericalError;
};

} // namespace qdx
