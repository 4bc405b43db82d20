#pragma once

#include <stdexcept>
#include <string>

namespace unot {

/// Raised when a caller passes data that violates an operation's precondition.
class InvalidInput : public std::invalid_argument {
 public:
  explicit InvalidInput(const std::string& what) : std::invalid_argument(what) {}
};

/// Raised when an internally computed quantity breaks an invariant that the
/// math guarantees (e.g. Kraus completeness, non-negative variance).
class ConsistencyError : public std::runtime_error {
 public:
  explicit ConsistencyError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace unot
