#pragma once

#include <stdexcept>
#include <string>

namespace ulmforge {

/// Raised by every text-format parser on malformed input.
class ParseError : public std::runtime_error {
 public:
  explicit ParseError(const std::string& what) : std::runtime_error("parse error: " + what) {}
};

/// Raised when an operation's precondition on its arguments does not hold
/// (mismatched primes, infinite group where a finite one is required, ...).
class DomainError : public std::invalid_argument {
 public:
  explicit DomainError(const std::string& what) : std::invalid_argument(what) {}
};

}  // namespace ulmforge
