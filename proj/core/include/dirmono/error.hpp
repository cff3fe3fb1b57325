#pragma once

#include <stdexcept>
#include <string>

namespace dirmono {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Sizes of points, directions or selectors do not agree, or n < 2.
class DimensionError : public Error {
 public:
  using Error::Error;
};

/// A direction entry is not exactly -1 or +1, or a direction token is malformed.
class MalformedDirection : public Error {
 public:
  using Error::Error;
};

/// A coordinate lies outside [0,1] or a box is not ordered.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Invalid copula description: parameter out of range, family not defined in
/// the requested dimension, unknown family tag.
class SpecError : public Error {
 public:
  using Error::Error;
};

/// The requested characterization does not cover this direction.
class UnsupportedDirection : public Error {
 public:
  using Error::Error;
};

}  // namespace dirmono
