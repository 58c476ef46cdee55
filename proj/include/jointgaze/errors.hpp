#pragma once

#include <stdexcept>
#include <string>

namespace jointgaze {

/// Base class for every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A face whose measurements cannot produce a pixel scale (e.g. ear distance <= 0).
class InvalidFaceError : public Error {
 public:
  using Error::Error;
};

/// An operation was called outside its domain.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

/// World point at or behind the camera plane.
class BehindCameraError : public Error {
 public:
  using Error::Error;
};

/// Malformed scene bundle, world, truth or report file. `field()` names the
/// offending entry.
class ParseError : public Error {
 public:
  ParseError(std::string field, const std::string& message)
      : Error(message + " (" + field + ")"), field_(std::move(field)) {}
  const std::string& field() const noexcept { return field_; }

 private:
  std::string field_;
};

/// A scene that violates one of the data-model invariants.
class ValidationError : public Error {
 public:
  using Error::Error;
};

/// render_world refused the world: an agent's line of sight is blocked.
class RenderRejected : public Error {
 public:
  using Error::Error;
};

/// sample_world ran out of resampling budget.
class GenerationError : public Error {
 public:
  using Error::Error;
};

}  // namespace jointgaze
