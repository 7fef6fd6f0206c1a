#include "horoflow/errors.hpp"

namespace horoflow {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::DegenerateCurve: return "DegenerateCurve";
    case ErrorKind::HemisphereViolation: return "HemisphereViolation";
    case ErrorKind::GridMismatch: return "GridMismatch";
    case ErrorKind::NotStarshaped: return "NotStarshaped";
    case ErrorKind::OutsideGamma: return "OutsideGamma";
    case ErrorKind::OutOfRange: return "OutOfRange";
    case ErrorKind::NonMonotonic: return "NonMonotonic";
    case ErrorKind::NotMeanConvex: return "NotMeanConvex";
    case ErrorKind::NotHoroConvex: return "NotHoroConvex";
    case ErrorKind::StepFailure: return "StepFailure";
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::Validation: return "Validation";
    case ErrorKind::Parse: return "Parse";
    case ErrorKind::Io: return "Io";
  }
  return "Unknown";
}

static std::string decorate(ErrorKind kind, const std::string& message, std::ptrdiff_t node) {
  std::string out{to_string(kind)};
  out += ": ";
  out += message;
  if (node != Error::kNoNode) {
    out += " (node ";
    out += std::to_string(node);
    out += ")";
  }
  return out;
}

Error::Error(ErrorKind kind, const std::string& message, std::ptrdiff_t node)
    : std::runtime_error(decorate(kind, message, node)), kind_(kind), message_(message), node_(node) {}

}  // namespace horoflow
