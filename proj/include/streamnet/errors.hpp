#pragma once

#include <stdexcept>

namespace streamnet {

// Error taxonomy shared with the CLI exit codes:
// validation = 1, I/O = 2, computation = 3.

class ValidationError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class ComputationError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Solver did not converge or produced a non-positive-definite iterate.
class SolverError : public ComputationError {
public:
    using ComputationError::ComputationError;
};

} // namespace streamnet
