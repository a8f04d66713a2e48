#ifndef WIDTHLAB_ERROR_HPP_
#define WIDTHLAB_ERROR_HPP_

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>

namespace widthlab {

// Every failure raised by the library carries one of these codes. The CLI
// maps them onto exit statuses and the machine-readable error field.
enum class ErrorCode {
  kSyntax,
  kUnknownLetter,
  kAlphabetMismatch,
  kArityMismatch,
  kInvalidArgument,
  kNoPowerWitness,
  kNotInForm,
  kNotInR,
  kNoCertificate,
  kNotProper,
  kCase2Inapplicable,
  kMalformedAlternation,
  kNoMatch,
  kPreconditionViolation,
  kResourceLimit,
  kInternal,
};

// Stable upper-case identifier, e.g. "NOT-IN-R".
std::string_view to_string(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

class ParseError : public Error {
 public:
  ParseError(ErrorCode code, std::size_t position, const std::string& message)
      : Error(code, message + " at position " + std::to_string(position)),
        position_(position) {}

  // Byte offset into the parsed text.
  std::size_t position() const noexcept { return position_; }

 private:
  std::size_t position_;
};

}  // namespace widthlab

#endif  // WIDTHLAB_ERROR_HPP_
