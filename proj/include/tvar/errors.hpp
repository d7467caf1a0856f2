#pragma once

#include <stdexcept>
#include <string>

namespace tvar {

// Base class for everything this library throws, so callers can catch
// library failures separately from std exceptions.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Bad argument values: out-of-range orders, malformed configs, etc.
class InvalidArgumentError : public Error {
 public:
  using Error::Error;
};

// Mismatched vector/matrix dimensions between related arguments.
class DimensionMismatchError : public Error {
 public:
  using Error::Error;
};

// Not enough samples for the requested model order / window.
class InsufficientDataError : public Error {
 public:
  using Error::Error;
};

// A least-squares design matrix lost full column rank.  Reported rather
// than silently regularized.
class RankDeficientError : public Error {
 public:
  using Error::Error;
};

// Autoregressive polynomial has a root on or outside the unit circle
// where a stationary model is required.
class UnstableModelError : public Error {
 public:
  using Error::Error;
};

// Leading block of a partitioned matrix is numerically singular, so a
// Schur complement cannot be formed.
class SingularBlockError : public Error {
 public:
  using Error::Error;
};

// Input window carries no energy (all zeros) where a normalized
// statistic is requested.
class ZeroEnergyError : public Error {
 public:
  using Error::Error;
};

// A Monte-Carlo trial failed; message carries the trial seed so the
// failure can be replayed.
class ScenarioError : public Error {
 public:
  using Error::Error;
};

// File I/O or format problems (WAV/CSV parsing and writing).
class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace tvar
