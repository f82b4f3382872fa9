#pragma once

#include <stdexcept>
#include <string>

namespace kolmo {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Malformed input: files, encodings, flag values.
struct ParseError : Error {
  using Error::Error;
};

struct MalformedEncodingError : ParseError {
  using ParseError::ParseError;
};

struct DuplicateKeyError : ParseError {
  using ParseError::ParseError;
};

// Request exceeds the configured desk-scale limits.
struct SizeLimitError : Error {
  using Error::Error;
};

struct UndefinedComplexityError : Error {
  using Error::Error;
};

struct HypothesisViolationError : Error {
  using Error::Error;
};

struct PartialFunctionError : Error {
  using Error::Error;
};

struct LengthMismatchError : Error {
  using Error::Error;
};

// A search legitimately found nothing (maps to CLI exit 1, not 2).
struct NotFoundError : Error {
  using Error::Error;
};

struct ExhaustedTriesError : Error {
  using Error::Error;
};

}  // namespace kolmo
