#pragma once

#include <stdexcept>
#include <string>

namespace mosaic {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ArgumentError : Error {
  using Error::Error;
};

// A point lies outside the domain it is used with.
struct DomainViolationError : Error {
  using Error::Error;
};

struct InsufficientPointsError : Error {
  using Error::Error;
};

struct DuplicatePointError : Error {
  using Error::Error;
};

// All NN distances identical; sigma is zero and RI undefined.
struct DegenerateDistributionError : Error {
  using Error::Error;
};

struct GenerationFailureError : Error {
  using Error::Error;
};

struct ParseError : Error {
  ParseError(const std::string& msg, long line) : Error(msg), line_number(line) {}
  long line_number;
};

struct IncompatibleCurvesError : Error {
  using Error::Error;
};

}  // namespace mosaic
