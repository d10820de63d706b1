#pragma once

#include <stdexcept>
#include <string>

namespace srbf {

/// Bad user input: malformed files, violated preconditions, dimension
/// mismatches. The CLI maps this to exit code 1.
class InputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A computation that could not be completed reliably (integer overflow in
/// exact elimination, a degenerate design matrix). The CLI maps this to
/// exit code 2.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

namespace detail {

inline void require(bool condition, const std::string& message) {
  if (!condition) throw InputError(message);
}

}  // namespace detail
}  // namespace srbf
