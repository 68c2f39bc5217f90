#pragma once

#include <stdexcept>
#include <string>

namespace moat {

/// Base class of every error thrown by this library.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Malformed configuration, flags or input schema (CLI exit code 2).
struct ConfigError : Error {
  using Error::Error;
};

/// A required indicator input (reference point/set, weights) is missing or
/// violates the indicator's domain (CLI exit code 3).
struct IndicatorInputError : Error {
  using Error::Error;
};

/// Mismatched or unsupported objective-space dimension (CLI exit code 4).
struct DimensionError : Error {
  using Error::Error;
};

/// The data set does not cover the requested selection: empty ingestion,
/// absent problem, or a hole in the algorithm x problem matrix (CLI exit
/// code 5).
struct CoverageError : Error {
  using Error::Error;
};

/// Filesystem failure or a malformed log/metadata file.
struct IoError : Error {
  using Error::Error;
};

}  // namespace moat
