#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace seventerm {

enum class ErrorCode {
  DimensionMismatch,
  InvalidGroup,
  InvalidInput,
  NotNormal,
  ActionNotHomomorphic,
  ActionInconsistent,
  SizeBudgetExceeded,
  DegreeOverflow,
  NotACocycle,
  InfiniteModule,
  SectionInvalid,
  NotInKernelOfRestriction,
  NotModuleMorphism,
  InvariantViolation,
  NotPartiallySplit,
  NotInvariant,
  EtaUnsolvable,
  FPrimeUnsolvable,
  ModuleNotNInvariant,
  NotAMorphismOfExtensions,
  UnknownPreset,
  BadParams,
  Internal,
};

constexpr std::string_view error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::InvalidGroup: return "InvalidGroup";
    case ErrorCode::InvalidInput: return "InvalidInput";
    case ErrorCode::NotNormal: return "NotNormal";
    case ErrorCode::ActionNotHomomorphic: return "ActionNotHomomorphic";
    case ErrorCode::ActionInconsistent: return "ActionInconsistent";
    case ErrorCode::SizeBudgetExceeded: return "SizeBudgetExceeded";
    case ErrorCode::DegreeOverflow: return "DegreeOverflow";
    case ErrorCode::NotACocycle: return "NotACocycle";
    case ErrorCode::InfiniteModule: return "InfiniteModule";
    case ErrorCode::SectionInvalid: return "SectionInvalid";
    case ErrorCode::NotInKernelOfRestriction: return "NotInKernelOfRestriction";
    case ErrorCode::NotModuleMorphism: return "NotModuleMorphism";
    case ErrorCode::InvariantViolation: return "InvariantViolation";
    case ErrorCode::NotPartiallySplit: return "NotPartiallySplit";
    case ErrorCode::NotInvariant: return "NotInvariant";
    case ErrorCode::EtaUnsolvable: return "EtaUnsolvable";
    case ErrorCode::FPrimeUnsolvable: return "FPrimeUnsolvable";
    case ErrorCode::ModuleNotNInvariant: return "ModuleNotNInvariant";
    case ErrorCode::NotAMorphismOfExtensions: return "NotAMorphismOfExtensions";
    case ErrorCode::UnknownPreset: return "UnknownPreset";
    case ErrorCode::BadParams: return "BadParams";
    case ErrorCode::Internal: return "Internal";
  }
  return "Unknown";
}

/// All library failures are reported through this exception; `code()` is the
/// machine-readable part surfaced by the CLI.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(error_code_name(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) { throw Error(code, what); }

inline void require(bool condition, ErrorCode code, const std::string& what) {
  if (!condition) fail(code, what);
}

}  // namespace seventerm
