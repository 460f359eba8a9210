#ifndef KFORGE_ERROR_HPP
#define KFORGE_ERROR_HPP

#include <cstddef>
#include <stdexcept>
#include <string>

namespace kforge {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Malformed polynomial text; position is a 0-based byte offset.
class ParseError : public Error {
public:
  ParseError(const std::string& what, std::size_t position)
    : Error(what + " at position " + std::to_string(position)),
      position_(position) {}

  std::size_t position() const { return position_; }

private:
  std::size_t position_;
};

/// Operands live in rings of different dimension, or a list has the wrong length.
class ArityError : public Error {
public:
  using Error::Error;
};

/// A documented precondition of an operation does not hold.
class PreconditionError : public Error {
public:
  using Error::Error;
};

/// Input is above the configured desk-scale factorization bounds.
class DegreeBoundExceeded : public Error {
public:
  using Error::Error;
};

/// An internal identity that must hold by construction failed to verify.
class VerificationFailure : public Error {
public:
  using Error::Error;
};

} // namespace kforge

#endif // KFORGE_ERROR_HPP
