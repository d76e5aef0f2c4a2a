#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace vlab {

// Syntax error in one of the textual input formats; position is a 0-based
// offset into the input (end-of-input errors point one past the last char).
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, std::size_t position)
      : std::runtime_error(what + " (position " + std::to_string(position) + ")"),
        position_(position) {}

  std::size_t position() const { return position_; }

 private:
  std::size_t position_;
};

// A construction would exceed its configured size cap.  Callers that want to
// proceed must raise the cap explicitly; nothing is computed past it.
class CapExceeded : public std::runtime_error {
 public:
  explicit CapExceeded(const std::string& what) : std::runtime_error(what) {}
};

// Two independent deciders for the same question disagreed, or a verified
// construction failed its own check.  Always a bug, never an input error.
class InternalError : public std::logic_error {
 public:
  explicit InternalError(const std::string& what) : std::logic_error(what) {}
};

}  // namespace vlab
