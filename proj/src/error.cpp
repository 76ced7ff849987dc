#include "pleat/error.hpp"

namespace pleat {

const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::GridMismatch: return "GridMismatch";
    case ErrorKind::VanishingSpeed: return "VanishingSpeed";
    case ErrorKind::FrameUndefined: return "FrameUndefined";
    case ErrorKind::Degenerate: return "Degenerate";
    case ErrorKind::NotProper: return "NotProper";
    case ErrorKind::LengthMismatch: return "LengthMismatch";
    case ErrorKind::RulingTangent: return "RulingTangent";
    case ErrorKind::NoIntersection: return "NoIntersection";
    case ErrorKind::TangentHit: return "TangentHit";
    case ErrorKind::OnRegressionCurve: return "OnRegressionCurve";
    case ErrorKind::DepthExhausted: return "DepthExhausted";
    case ErrorKind::TooShort: return "TooShort";
    case ErrorKind::NotClosed: return "NotClosed";
    case ErrorKind::RefusedSingular: return "RefusedSingular";
    case ErrorKind::SeamError: return "SeamError";
    case ErrorKind::ConfigError: return "ConfigError";
  }
  return "Unknown";
}

namespace {

std::string decorate(ErrorKind kind, const std::string& what,
                     std::optional<double> where) {
  std::string msg = std::string(to_string(kind)) + ": " + what;
  if (where) msg += " (at s = " + std::to_string(*where) + ")";
  return msg;
}

}  // namespace

GeometryError::GeometryError(ErrorKind kind, const std::string& what,
                             std::optional<double> where)
    : std::runtime_error(decorate(kind, what, where)),
      kind_(kind),
      location_(where) {}

}  // namespace pleat
