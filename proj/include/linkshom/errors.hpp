#pragma once

#include <stdexcept>
#include <string>

namespace linkshom {

/// An internal consistency check failed, such as d^2 != 0 or a negative
/// homology dimension.
/// These indicate a bug, never bad user input.
class InvariantViolation : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace linkshom
