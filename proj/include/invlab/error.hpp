#pragma once

#include <stdexcept>
#include <string>

namespace invlab {

/// Input that violates an operation's precondition (bad data, bad config).
class ValidationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A field went non-finite; carries the first offending node.
class NonFiniteError : public ValidationError {
 public:
  NonFiniteError(const std::string& what, int j, int k)
      : ValidationError(what), j_(j), k_(k) {}
  int j() const { return j_; }
  int k() const { return k_; }

 private:
  int j_;
  int k_;
};

/// Requested step exceeds the CFL bound.
class CflViolation : public ValidationError {
 public:
  CflViolation(const std::string& what, double admissible)
      : ValidationError(what), admissible_(admissible) {}
  double admissible_dt() const { return admissible_; }

 private:
  double admissible_;
};

/// Internal consistency failure (e.g. a root bracket that should exist doesn't).
class InternalError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace invlab
