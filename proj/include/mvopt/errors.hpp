#pragma once

#include <stdexcept>
#include <string>

namespace mvopt {

/// A document or parameter set violates an invariant (bad field value,
/// dangling reference, malformed document).
class ValidationError : public std::runtime_error {
 public:
  explicit ValidationError(const std::string& what) : std::runtime_error(what) {}
};

/// Filesystem-level failure: missing input, unwritable output.
class IoError : public std::runtime_error {
 public:
  explicit IoError(const std::string& what) : std::runtime_error(what) {}
};

/// The constraints exclude every configuration (only possible with a
/// response-time cap; the empty configuration always fits the storage budget).
class NoFeasibleError : public std::runtime_error {
 public:
  explicit NoFeasibleError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace mvopt
