#pragma once

#include <stdexcept>
#include <string>

namespace fanband {

// Malformed or out-of-range input. The CLI maps this to exit code 2.
class InputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A construction precondition was violated (e.g. a blowup factor that is too
// small for the requested certificate).
class ConstraintError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace fanband
