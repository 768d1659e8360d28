#pragma once

#include <stdexcept>
#include <string>

namespace rbrl {

// Base class for everything thrown by the library. The CLI maps the three
// groups below onto distinct process exit codes.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// --- input / parse failures ---
struct ParseError : Error {
  using Error::Error;
};
struct LabelOutOfRange : ParseError {
  using ParseError::ParseError;
};
struct InconsistentWidth : ParseError {
  using ParseError::ParseError;
};

// --- validation failures ---
struct ValidationError : Error {
  using Error::Error;
};
struct EmptyDataset : ValidationError {
  using ValidationError::ValidationError;
};
struct BadLabelValue : ValidationError {
  using ValidationError::ValidationError;
};
struct NonFiniteFeature : ValidationError {
  using ValidationError::ValidationError;
};
struct ShapeMismatch : ValidationError {
  using ValidationError::ValidationError;
};
struct AsymmetricKernel : ValidationError {
  using ValidationError::ValidationError;
};
struct TooFewRows : ValidationError {
  using ValidationError::ValidationError;
};
struct VersionMismatch : ValidationError {
  using ValidationError::ValidationError;
};

// --- numeric failures ---
struct NumericError : Error {
  using Error::Error;
};
struct SvdFailure : NumericError {
  using NumericError::NumericError;
};
struct NonFiniteObjective : NumericError {
  using NumericError::NumericError;
};
struct NoUsableRows : NumericError {
  using NumericError::NumericError;
};

} // namespace rbrl
