#pragma once

#include <optional>
#include <stdexcept>
#include <string>

namespace pleat {

// Failure categories raised by the geometry pipeline. Per-sample propagation
// outcomes (crossing the regression curve, missing the next foldline) are not
// errors; they are reported through RegularityReport.
enum class ErrorKind {
  InvalidArgument,
  GridMismatch,
  VanishingSpeed,
  FrameUndefined,
  Degenerate,
  NotProper,
  LengthMismatch,
  RulingTangent,
  NoIntersection,
  TangentHit,
  OnRegressionCurve,
  DepthExhausted,
  TooShort,
  NotClosed,
  RefusedSingular,
  SeamError,
  ConfigError,
};

const char* to_string(ErrorKind kind);

class GeometryError : public std::runtime_error {
 public:
  GeometryError(ErrorKind kind, const std::string& what,
                std::optional<double> where = std::nullopt);

  ErrorKind kind() const { return kind_; }
  // Arc-length location of the offending sample, when one exists.
  std::optional<double> location() const { return location_; }

 private:
  ErrorKind kind_;
  std::optional<double> location_;
};

}  // namespace pleat
