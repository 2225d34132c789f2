#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace implreg {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed model text or CSV input. Carries a character position (model
/// grammar) or a 1-based line number (CSV), whichever applies.
class ParseError : public Error {
 public:
  enum class Where { kPosition, kLine };

  ParseError(const std::string& message, Where where, std::size_t location)
      : Error(message), where_(where), location_(location) {}

  Where where() const noexcept { return where_; }
  std::size_t location() const noexcept { return location_; }

 private:
  Where where_;
  std::size_t location_;
};

class DomainError : public Error {
 public:
  using Error::Error;
};

/// Non-finite value where a finite one is required.
class RangeError : public Error {
 public:
  using Error::Error;
};

class InsufficientDataError : public Error {
 public:
  using Error::Error;
};

/// Design matrix without full column rank.
class SingularDesignError : public Error {
 public:
  using Error::Error;
};

/// Degenerate input: zero sums, zero-area triangles and the like.
class DegenerateError : public Error {
 public:
  using Error::Error;
};

class UnsupportedModelError : public Error {
 public:
  using Error::Error;
};

/// Bundled resource failed its checksum or anchor validation.
class IntegrityError : public Error {
 public:
  using Error::Error;
};

}  // namespace implreg
