#pragma once

#include <stdexcept>
#include <string>

namespace atomcharge {

/// Input rejected by a precondition check (bad partition, weight outside an
/// interval, malformed file).
class InvalidInput : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A crystal would exceed the configured element bound.
class SizeLimitExceeded : public std::length_error {
 public:
  using std::length_error::length_error;
};

/// A structural property that must hold for every valid crystal failed.
/// Never caught and patched inside the library.
class InternalError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace atomcharge
