#pragma once

#include <stdexcept>
#include <string>

namespace mev {

/// Numerical machinery failed to meet its contract (quadrature tolerance,
/// root bracketing, indefinite covariance, ...).
struct NumericError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Malformed input data (series files, row-level validation).
struct ParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace mev
