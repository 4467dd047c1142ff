#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace branchmod {

// Every failure raised by the library carries one of these codes so callers
// (and the CLI exit-code mapping) can tell validation problems from
// cross-check failures without parsing messages.
enum class ErrorCode {
  // pair validation
  MultiplicityTooSmall,
  NonIncreasingExponents,
  GcdChainStall,
  GcdNotOne,
  BadBeta0,
  DeltaYZeroBeta0,
  BadFlag,
  // exponent ladder
  NotAMember,
  // Apery engine
  UnsuitablePresentation,
  NonTermination,
  PostconditionViolation,
  InfiniteDifference,
  // blow-up
  NotASlidingDivisor,
  IterationCap,
  // moduli cross-checks
  InclusionViolated,
  SigmaMismatch,
  CrossCheckFailure,
  NotPlainBranch,
  // oracle
  ZeroToPrecision,
  PrecisionExhausted,
  // front end
  ParseError,
};

std::string_view to_string(ErrorCode code);

// True for codes that signal a disagreement between two independent
// computations (as opposed to bad input).
bool is_cross_check(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what);

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] void fail(ErrorCode code, const std::string& what);

}  // namespace branchmod
