#pragma once

#include <stdexcept>
#include <string>

namespace png {

// Violated precondition (bad ordering, out-of-domain parameter, ...).
struct DomainError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// A truncation window is too small for the requested accuracy.
struct WindowError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// An iterative or adaptive scheme failed to reach its tolerance.
struct ConvergenceError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace png
