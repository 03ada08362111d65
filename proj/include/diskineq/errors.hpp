#pragma once

#include <stdexcept>
#include <string>

namespace diskineq {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class OutOfRange : public Error {
 public:
  using Error::Error;
};

class NotRealValued : public Error {
 public:
  using Error::Error;
};

class PreconditionFailed : public Error {
 public:
  using Error::Error;
};

class NonFiniteSample : public Error {
 public:
  using Error::Error;
};

class DegenerateZero : public Error {
 public:
  using Error::Error;
};

/// Adaptive refinement hit its node cap. Carries the last estimate and increment.
class NoConvergence : public Error {
 public:
  NoConvergence(const std::string& what, double last_value, double last_increment)
      : Error(what), last_value_(last_value), last_increment_(last_increment) {}

  double last_value() const noexcept { return last_value_; }
  double last_increment() const noexcept { return last_increment_; }

 private:
  double last_value_;
  double last_increment_;
};

}  // namespace diskineq
