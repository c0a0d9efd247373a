#pragma once

#include <stdexcept>
#include <string>

namespace goldcast {

// Bad flags, unknown subcommand, malformed config. CLI exit code 1.
struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Missing/malformed input files, schema or alignment violations. CLI exit code 2.
struct DataError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Non-finite losses/gradients, degenerate series, all-infeasible searches. CLI exit code 3.
struct NumericError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace goldcast
