#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>

namespace horoflow {

enum class ErrorKind {
  DegenerateCurve,
  HemisphereViolation,
  GridMismatch,
  NotStarshaped,
  OutsideGamma,
  OutOfRange,
  NonMonotonic,
  NotMeanConvex,
  NotHoroConvex,
  StepFailure,
  InvalidArgument,
  Validation,
  Parse,
  Io,
};

std::string_view to_string(ErrorKind kind);

/// Every failure raised by the library carries a kind so callers (the CLI in
/// particular) can map it onto an exit code without parsing messages.
class Error : public std::runtime_error {
 public:
  static constexpr std::ptrdiff_t kNoNode = -1;

  Error(ErrorKind kind, const std::string& message, std::ptrdiff_t node = kNoNode);

  ErrorKind kind() const noexcept { return kind_; }
  /// The message without the kind prefix and node suffix.
  const std::string& message() const noexcept { return message_; }
  /// Offending node index, or kNoNode.
  std::ptrdiff_t node() const noexcept { return node_; }

 private:
  ErrorKind kind_;
  std::string message_;
  std::ptrdiff_t node_;
};

}  // namespace horoflow
