#pragma once

#include <stdexcept>
#include <string>

namespace splitkernel {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Quadrature tolerance not reached within the panel or window budget.
class NonConvergent : public Error {
 public:
  using Error::Error;
};

/// Partial integrals grow without bound under truncation doubling.
class DivergentIntegral : public Error {
 public:
  using Error::Error;
};

class UnknownKernel : public Error {
 public:
  using Error::Error;
};

class ParamOutOfRange : public Error {
 public:
  using Error::Error;
};

/// A sampled kernel value broke its upper (or flagged lower) envelope.
class EstimateViolated : public Error {
 public:
  EstimateViolated(const std::string& what, double x, double y)
      : Error(what), x_(x), y_(y) {}
  double x() const noexcept { return x_; }
  double y() const noexcept { return y_; }

 private:
  double x_;
  double y_;
};

class ExponentOrderViolation : public Error {
 public:
  using Error::Error;
};

class ExponentOutOfScope : public Error {
 public:
  using Error::Error;
};

class HypothesisViolated : public Error {
 public:
  using Error::Error;
};

class EquivalenceViolated : public Error {
 public:
  EquivalenceViolated(const std::string& what, double t) : Error(what), t_(t) {}
  double t() const noexcept { return t_; }

 private:
  double t_;
};

class SideConditionViolated : public Error {
 public:
  using Error::Error;
};

/// Malformed command-line configuration or textual input.
class ConfigError : public Error {
 public:
  using Error::Error;
};

}  // namespace splitkernel
