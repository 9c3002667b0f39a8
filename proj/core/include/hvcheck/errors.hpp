#pragma once

#include <stdexcept>
#include <string>

namespace hvcheck {

// Base for every failure the toolkit reports; callers that only want a
// message can catch this.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DivisionByZero : public Error {
 public:
  DivisionByZero() : Error("division by zero in finite field") {}
};

// The fibre parameter collides with a singular fibre, or p is 2.
class BadReduction : public Error {
 public:
  using Error::Error;
};

class CheckpointError : public Error {
 public:
  using Error::Error;
};

class ArithmeticOverflow : public Error {
 public:
  using Error::Error;
};

// A verification identity did not hold. The message names the stage.
class VerificationFailure : public Error {
 public:
  using Error::Error;
};

// Problems with reference data: unknown labels, unreachable servers,
// records that violate the Ramanujan-Deligne bound.
class DataError : public Error {
 public:
  using Error::Error;
};

class UnknownLabel : public DataError {
 public:
  explicit UnknownLabel(const std::string& label) : DataError("unknown label '" + label + "'") {}
};

class NetworkError : public DataError {
 public:
  using DataError::DataError;
};

}  // namespace hvcheck
