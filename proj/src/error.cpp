#include "widthlab/error.hpp"

namespace widthlab {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::kSyntax:
      return "SYNTAX";
    case ErrorCode::kUnknownLetter:
      return "UNKNOWN-LETTER";
    case ErrorCode::kAlphabetMismatch:
      return "ALPHABET-MISMATCH";
    case ErrorCode::kArityMismatch:
      return "ARITY-MISMATCH";
    case ErrorCode::kInvalidArgument:
      return "INVALID-ARGUMENT";
    case ErrorCode::kNoPowerWitness:
      return "NO-POWER-WITNESS";
    case ErrorCode::kNotInForm:
      return "NOT-IN-FORM";
    case ErrorCode::kNotInR:
      return "NOT-IN-R";
    case ErrorCode::kNoCertificate:
      return "NO-CERTIFICATE";
    case ErrorCode::kNotProper:
      return "NOT-PROPER";
    case ErrorCode::kCase2Inapplicable:
      return "CASE2-INAPPLICABLE";
    case ErrorCode::kMalformedAlternation:
      return "MALFORMED-ALTERNATION";
    case ErrorCode::kNoMatch:
      return "NO-MATCH";
    case ErrorCode::kPreconditionViolation:
      return "PRECONDITION-VIOLATION";
    case ErrorCode::kResourceLimit:
      return "RESOURCE-LIMIT";
    case ErrorCode::kInternal:
      return "INTERNAL";
  }
  return "UNKNOWN";
}

}  // namespace widthlab
