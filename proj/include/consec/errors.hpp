#pragma once

#include <stdexcept>
#include <string>

namespace consec {

/// Malformed problem instance or argument (bad extents, q outside [0,1], ...).
class ShapeError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A configured size cap was exceeded (volume, subset bound, oracle cap).
class ResourceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An internal consistency check failed; indicates a bug, not bad input.
class InternalError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace consec
