#pragma once

#include <stdexcept>

namespace depolsim {

/// Invalid arguments or configuration (bad sizes, ranges, malformed input files).
/// The CLI maps this to exit code 2.
struct ConfigError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// A solver could not produce a result for a structurally valid request
/// (e.g. a target outside the reachable range). The CLI maps this to exit code 3.
struct SolverError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace depolsim
