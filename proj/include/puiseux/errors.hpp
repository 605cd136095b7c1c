#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace puiseux {

/// Thrown when a configurable cap (enumeration size, search depth, DP table
/// size) is exceeded. Carries the cap that was hit so callers can report it.
class ResourceError : public std::runtime_error {
 public:
  ResourceError(const std::string& what, std::int64_t cap)
      : std::runtime_error(what + " (cap: " + std::to_string(cap) + ")"),
        cap_(cap) {}

  std::int64_t cap() const { return cap_; }

 private:
  std::int64_t cap_;
};

/// Thrown when a query needs state (e.g. a materialized stage) that the
/// target object does not have yet.
class StateError : public std::logic_error {
 public:
  explicit StateError(const std::string& what) : std::logic_error(what) {}
};

}  // namespace puiseux
