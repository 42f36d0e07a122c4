#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace ramanqc {

enum class ErrorKind {
  UnsupportedDimension,
  NonFinite,
  InvalidArgument,
  NotOptimalDetuning,
  NonConvergence,
  Singular,
  StabilityGuard,
  OutOfRange,
  GridTooSmall,
  UnderResolved,
  StepBudget,
  Config,
};

std::string_view to_string(ErrorKind kind);

// Single exception type for every recoverable failure in the library. The
// kind is stable and is what the CLI serializes.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(message), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace ramanqc
