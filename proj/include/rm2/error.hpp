#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace rm2 {

enum class ErrorCode {
  InvalidArgument,
  PoleOfGamma,
  DegenerateConnection,
  NoConvergence,
  OrderTooLarge,
  BranchPoint,
  Unclassified,
  DegenerateParameters,
  ExponentSingularity,
  AtPole,
  SeedHasNode,
  WronskianZero,
  PreconditionFailed,
  NoBracketSignChange,
  StiffIntegration,
  ValueUnderflow,
};

std::string_view to_string(ErrorCode code);

/// Every failure raised by the library carries a machine-readable code.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace rm2
