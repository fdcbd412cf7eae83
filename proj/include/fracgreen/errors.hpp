#pragma once

#include <stdexcept>
#include <string>

namespace fracgreen {

// Exit-code contract used by the CLI: 0 pass, 2 invariant failure,
// 3 configuration error, 4 solver failure.

struct ConfigError : std::runtime_error {
    explicit ConfigError(const std::string& msg) : std::runtime_error(msg) {}
};

struct SolverError : std::runtime_error {
    explicit SolverError(const std::string& msg) : std::runtime_error(msg) {}
};

struct InvariantError : std::runtime_error {
    explicit InvariantError(const std::string& msg) : std::runtime_error(msg) {}
};

struct EvaluationError : std::runtime_error {
    explicit EvaluationError(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace fracgreen
