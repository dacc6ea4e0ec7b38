#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace hopbank {

/// Base class for every error thrown by this library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Shape or length disagreement between two values.
class DimensionError : public Error {
 public:
  using Error::Error;
};

/// A value outside its allowed alphabet ({0,1} pixels, {+1,-1} states).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// A scalar parameter outside its precondition (variance, fraction, region).
class ParameterError : public Error {
 public:
  using Error::Error;
};

/// Structurally invalid input (empty set, non-finite entries, empty bank).
class InputError : public Error {
 public:
  using Error::Error;
};

/// Pattern load exceeds what a network can store.
class CapacityError : public Error {
 public:
  using Error::Error;
};

/// Degenerate training data (all-zero weight matrix, rank deficiency).
class TrainingError : public Error {
 public:
  using Error::Error;
};

/// Unrecognized file magic or unsupported format version.
class FormatError : public Error {
 public:
  using Error::Error;
};

/// Payload checksum mismatch.
class CorruptionError : public Error {
 public:
  using Error::Error;
};

/// Filesystem failure, reported with path context.
class IoError : public Error {
 public:
  using Error::Error;
};

/// Malformed content. Carries the byte offset (or line number for text
/// configs) at which parsing failed, when known.
class ParseError : public Error {
 public:
  static constexpr std::size_t kNoOffset = static_cast<std::size_t>(-1);

  explicit ParseError(const std::string& what) : Error(what), offset_(kNoOffset) {}
  ParseError(const std::string& what, std::size_t byte_offset)
      : Error(what + " (byte " + std::to_string(byte_offset) + ")"), offset_(byte_offset) {}

  std::size_t byte_offset() const { return offset_; }

 private:
  std::size_t offset_;
};

}  // namespace hopbank
