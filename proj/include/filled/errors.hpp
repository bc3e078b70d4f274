#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace filled {

// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

#define FILLED_DECLARE_ERROR(Name)          \
  class Name : public Error {               \
   public:                                  \
    using Error::Error;                     \
  }

FILLED_DECLARE_ERROR(SpecDomainError);
FILLED_DECLARE_ERROR(OrderCapExceeded);
FILLED_DECLARE_ERROR(InvalidGroupTable);
FILLED_DECLARE_ERROR(GroupMismatch);
FILLED_DECLARE_ERROR(PreconditionViolated);
FILLED_DECLARE_ERROR(NotNormal);
FILLED_DECLARE_ERROR(NotSubgroup);
FILLED_DECLARE_ERROR(NotDihedral);
FILLED_DECLARE_ERROR(ExhaustiveCapExceeded);
FILLED_DECLARE_ERROR(FrameTooSmall);
FILLED_DECLARE_ERROR(NotCentralProductC4);
FILLED_DECLARE_ERROR(OrderOutOfRange);
FILLED_DECLARE_ERROR(DomainError);
FILLED_DECLARE_ERROR(InternalCheckFailed);

#undef FILLED_DECLARE_ERROR

// Syntax error in a group spec or set literal. offset is a byte offset into
// the input text.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t offset)
      : Error(what + " (at byte " + std::to_string(offset) + ")"), offset_(offset) {}

  std::size_t offset() const noexcept { return offset_; }

 private:
  std::size_t offset_;
};

}  // namespace filled
