#pragma once

#include <stdexcept>
#include <string>

namespace biharm {

// Division by zero, mismatched operands and similar misuse of the algebra.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// A value of d outside {1, 2, 3, 4, 6}.
class UnsupportedCaseError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, std::string location)
      : std::runtime_error(location.empty() ? what : location + ": " + what),
        location_(std::move(location)) {}

  const std::string& location() const noexcept { return location_; }

 private:
  std::string location_;
};

// User supplied data that violates a documented bound or identity.
class ValidationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// An internal invariant of the symbolic pipeline failed. Always a bug.
class PipelineError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

// A numerical evaluation was requested too close to a chamber wall.
class BoundaryError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace biharm
