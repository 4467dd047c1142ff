#include "branchmod/error.hpp"

namespace branchmod {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::MultiplicityTooSmall: return "MultiplicityTooSmall";
    case ErrorCode::NonIncreasingExponents: return "NonIncreasingExponents";
    case ErrorCode::GcdChainStall: return "GcdChainStall";
    case ErrorCode::GcdNotOne: return "GcdNotOne";
    case ErrorCode::BadBeta0: return "BadBeta0";
    case ErrorCode::DeltaYZeroBeta0: return "DeltaYZeroBeta0";
    case ErrorCode::BadFlag: return "BadFlag";
    case ErrorCode::NotAMember: return "NotAMember";
    case ErrorCode::UnsuitablePresentation: return "UnsuitablePresentation";
    case ErrorCode::NonTermination: return "NonTermination";
    case ErrorCode::PostconditionViolation: return "PostconditionViolation";
    case ErrorCode::InfiniteDifference: return "InfiniteDifference";
    case ErrorCode::NotASlidingDivisor: return "NotASlidingDivisor";
    case ErrorCode::IterationCap: return "IterationCap";
    case ErrorCode::InclusionViolated: return "InclusionViolated";
    case ErrorCode::SigmaMismatch: return "SigmaMismatch";
    case ErrorCode::CrossCheckFailure: return "CrossCheckFailure";
    case ErrorCode::NotPlainBranch: return "NotPlainBranch";
    case ErrorCode::ZeroToPrecision: return "ZeroToPrecision";
    case ErrorCode::PrecisionExhausted: return "PrecisionExhausted";
    case ErrorCode::ParseError: return "ParseError";
  }
  return "Unknown";
}

bool is_cross_check(ErrorCode code) {
  switch (code) {
    case ErrorCode::PostconditionViolation:
    case ErrorCode::NonTermination:
    case ErrorCode::IterationCap:
    case ErrorCode::InclusionViolated:
    case ErrorCode::SigmaMismatch:
    case ErrorCode::CrossCheckFailure:
    case ErrorCode::PrecisionExhausted:
      return true;
    default:
      return false;
  }
}

Error::Error(ErrorCode code, const std::string& what)
    : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

void fail(ErrorCode code, const std::string& what) { throw Error(code, what); }

}  // namespace branchmod
