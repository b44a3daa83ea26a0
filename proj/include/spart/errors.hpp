#pragma once

#include <stdexcept>
#include <string>

namespace spart {

// Base of every domain error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

#define SPART_DECLARE_ERROR(Name)           \
  class Name : public Error {               \
   public:                                  \
    using Error::Error;                     \
  }

SPART_DECLARE_ERROR(OverlapError);
SPART_DECLARE_ERROR(CoverageError);
SPART_DECLARE_ERROR(RangeError);
SPART_DECLARE_ERROR(LevelMismatch);
SPART_DECLARE_ERROR(ColorMismatch);
SPART_DECLARE_ERROR(EmptyRow);
SPART_DECLARE_ERROR(TooLarge);
SPART_DECLARE_ERROR(ShapeError);
SPART_DECLARE_ERROR(GradingError);
SPART_DECLARE_ERROR(BoundTooSmall);
SPART_DECLARE_ERROR(NotRigid);
SPART_DECLARE_ERROR(NotRigidWithinBound);
SPART_DECLARE_ERROR(NotDualityForm);
SPART_DECLARE_ERROR(OddTotalColumns);
SPART_DECLARE_ERROR(NotAllWhite);
SPART_DECLARE_ERROR(PermutationError);

#undef SPART_DECLARE_ERROR

// Malformed text input; line and column are 1-based.
class SyntaxError : public Error {
 public:
  SyntaxError(const std::string& what, int line, int column)
      : Error("syntax error at " + std::to_string(line) + ":" +
              std::to_string(column) + ": " + what),
        line_(line),
        column_(column) {}

  int line() const noexcept { return line_; }
  int column() const noexcept { return column_; }

 private:
  int line_;
  int column_;
};

}  // namespace spart
