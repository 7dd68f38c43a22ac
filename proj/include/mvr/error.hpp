#ifndef MVR_ERROR_HPP
#define MVR_ERROR_HPP

#include <cstddef>
#include <stdexcept>
#include <string>

namespace mvr {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed or invalid input data (files, command-line values, vectors).
class InputError : public Error {
 public:
  using Error::Error;
};

class DimensionMismatch : public Error {
 public:
  using Error::Error;
};

class ParseError : public InputError {
 public:
  ParseError(const std::string& what, std::size_t offset)
      : InputError(what + " at byte " + std::to_string(offset)), offset_(offset) {}
  std::size_t offset() const { return offset_; }

 private:
  std::size_t offset_;
};

class ArityError : public Error {
 public:
  using Error::Error;
};

class NotRegular : public Error {
 public:
  using Error::Error;
};

class ZeroDimensional : public Error {
 public:
  using Error::Error;
};

class PointOutsideSupport : public Error {
 public:
  using Error::Error;
};

class NotClosedDomain : public Error {
 public:
  using Error::Error;
};

class NotASubset : public Error {
 public:
  using Error::Error;
};

class ShapeMismatch : public Error {
 public:
  using Error::Error;
};

/// A map failed a construction-time check (non-integer piece, discontinuity,
/// image leaving the cube).
class InvalidMap : public Error {
 public:
  using Error::Error;
};

class CapExceeded : public Error {
 public:
  using Error::Error;
};

}  // namespace mvr

#endif  // MVR_ERROR_HPP
