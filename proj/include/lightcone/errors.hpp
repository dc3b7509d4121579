#pragma once

#include <stdexcept>
#include <string>

namespace lightcone {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A precondition on an argument was violated (non-positive radius, empty region, ...).
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// A generated object would exceed a configured size cap.
class CapExceeded : public Error {
 public:
  using Error::Error;
};

/// Two set families were built over ground sets of different size.
class GroundMismatch : public Error {
 public:
  using Error::Error;
};

/// An axis probe was requested for an axis with fewer than two sample points on it.
class AxisNotInSample : public Error {
 public:
  using Error::Error;
};

/// Malformed experiment configuration or input file.
class BadConfig : public Error {
 public:
  using Error::Error;
};

}  // namespace lightcone
