#pragma once

#include <stdexcept>
#include <string>

namespace rgsw {

enum class Errc {
  InvalidParameter,
  NonPositiveHeight,
  ImaginarySoundSpeed,
  ZeroEntropy,
  NegativeEnstrophy,
  NonEquilibriumEndstate,
  NoPositiveRoot,
  IntegrationFailure,
  NonZeroMean,
  GridTooCoarse,
  BranchCut,
  NotAsymptoticallyConstant,
  SplittingFailure,
  OverflowGuard,
  ContourThroughZero,
  LambdaZero,
  ReductionViolation,
  CFLViolation,
  StiffSource,
  BlowUp,
  NoTransitionFound,
  Config,
  Io,
};

const char* to_string(Errc code) noexcept;

/// Every failure in the library is reported through this type; `code()`
/// identifies the condition, `what()` carries the context.
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& message)
      : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

}  // namespace rgsw
