#pragma once

#include <stdexcept>
#include <string>

namespace specialk {

/// Numerical failure discovered mid-computation (eigensolver non-convergence,
/// degenerate cluster matrices, ...). Mapped to exit code 1 by the CLI.
class numeric_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed input file; the message carries the offending row/column.
/// Mapped to exit code 2 by the CLI.
class parse_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace specialk
