#pragma once

#include <stdexcept>

namespace consim {

/// A numerical procedure failed to reach its tolerance (e.g. power iteration
/// hit the iteration cap). The message carries the last residual.
struct NumericError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Filesystem or stream failure.
struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// A single experiment run could not be completed (e.g. the connectivity
/// retry limit was exhausted while generating the network).
struct RunError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace consim
