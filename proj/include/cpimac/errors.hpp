// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <stdexcept>
#include <string>

namespace cpimac {

// Base type for all library errors.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A channel coefficient is zero (or below the magnitude floor where the
// construction divides by it).
class DegenerateChannel : public Error {
 public:
  using Error::Error;
};

// Two receive directions that must span the plane have collapsed onto a line.
class LinearDependence : public Error {
 public:
  using Error::Error;
};

// The aligned interference direction has zero length, so there is no null
// space to project onto.
class ZeroInterferenceDirection : public Error {
 public:
  using Error::Error;
};

// The power grid handed to the DoF estimator is not asymptotic enough.
class InsufficientGrid : public Error {
 public:
  using Error::Error;
};

// The regression residual is too large for the slope to mean anything.
class PoorFit : public Error {
 public:
  using Error::Error;
};

// Invalid simulation configuration (rejected before any work is done).
class ConfigError : public Error {
 public:
  using Error::Error;
};

// File I/O failure; the message carries the path.
class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace cpimac
