#pragma once

#include <stdexcept>
#include <string>

namespace quivfix {

enum class Errc {
  DivisionByZero,
  FieldMismatch,
  InfiniteField,
  DanglingArrow,
  DuplicateId,
  ContravariantElement,
  IncompatibleData,
  IncompatibleDim,
  ShapeMismatch,
  TooLarge,
  NotAModifyingFamily,
  NotInDelta,
  CocycleMismatch,
  NotFixed,
  NotRegularlyStable,
  RelationFailure,
  IsSemistable,
  TieBreakViolation,
  NoModifyingFamilyForClass,
  WrongField,
  NotStarAutomorphism,
  NotInvolution,
  NotInFiber,
  NotStable,
  Mismatch,
  ZeroDimension,
  ParseError,
  Unsupported,
};

const char* errc_name(Errc c);

/// Library error. `code() == Errc::Mismatch`, `RelationFailure` and
/// `TieBreakViolation` indicate a violated mathematical identity rather
/// than bad input; the CLI maps those to exit code 2.
class Error : public std::runtime_error {
 public:
  Error(Errc code, std::string msg)
      : std::runtime_error(std::string(errc_name(code)) + ": " + std::move(msg)),
        code_(code) {}
  Errc code() const { return code_; }

 private:
  Errc code_;
};

[[noreturn]] inline void fail(Errc code, const std::string& msg) { throw Error(code, msg); }

/// True for error codes that mean "a mathematical identity failed".
inline bool is_identity_violation(Errc c) {
  return c == Errc::Mismatch || c == Errc::RelationFailure || c == Errc::TieBreakViolation ||
         c == Errc::NoModifyingFamilyForClass;
}

}  // namespace quivfix
