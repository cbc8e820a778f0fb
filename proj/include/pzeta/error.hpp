#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace pzeta {

enum class ErrorCode {
  NotALattice,
  NoBoundedStructure,
  DegenerateLattice,
  CyclicCovers,
  InvalidElement,
  NotComparable,
  BottomHasNoIrreducibles,
  SizeLimitExceeded,
  BudgetExceeded,
  MismatchDetected,
  NotAPrimePower,
  SingularInput,
  PartNotDivisible,
  OrderLimitExceeded,
  NotCoprimeOrders,
  NotAGroup,
  UnknownFixture,
  ParseError,
  UsageError,
  IoError,
};

std::string_view to_string(ErrorCode code);

/// Every failure raised by the library carries one of the codes above so
/// that the CLI can map it onto a machine-readable error document.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& message) {
  throw Error(code, message);
}

}  // namespace pzeta
