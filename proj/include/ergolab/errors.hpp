#pragma once

#include <stdexcept>
#include <string>

namespace ergolab {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Newton-with-bisection root finder ran out of iterations.
class NonConvergence : public Error {
 public:
  using Error::Error;
};

class NotExpanding : public Error {
 public:
  using Error::Error;
};

// Sub-action iteration hit its cap or deadline; carries the last residual.
class NoConvergence : public Error {
 public:
  NoConvergence(const std::string& what, double last_residual, int iterations)
      : Error(what), last_residual_(last_residual), iterations_(iterations) {}
  double last_residual() const { return last_residual_; }
  int iterations() const { return iterations_; }

 private:
  double last_residual_;
  int iterations_;
};

class EmptyEstimate : public Error {
 public:
  using Error::Error;
};

class BudgetExceeded : public Error {
 public:
  using Error::Error;
};

class NoCoding : public Error {
 public:
  using Error::Error;
};

class BranchAmbiguity : public Error {
 public:
  using Error::Error;
};

class LengthMismatch : public Error {
 public:
  using Error::Error;
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

}  // namespace ergolab
