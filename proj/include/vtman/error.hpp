#pragma once

#include <stdexcept>
#include <string>

namespace vtman {

/// Malformed user input: cycle strings, complex files, catalog records.
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A precondition on a call was violated (wrong dimension, non-transitive
/// group, face not in complex, ...).
class PreconditionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Group closure would exceed the requested element cap.
class CapExceeded : public std::runtime_error {
 public:
  explicit CapExceeded(std::size_t cap)
      : std::runtime_error("group has more than " + std::to_string(cap) + " elements"), cap_(cap) {}
  std::size_t cap() const { return cap_; }

 private:
  std::size_t cap_;
};

}  // namespace vtman
