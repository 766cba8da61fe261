#pragma once

#include <stdexcept>
#include <string>

namespace expgof {

// Invalid input: bad arguments, out-of-domain parameters, unreadable files.
class DomainError : public std::invalid_argument {
 public:
  explicit DomainError(const std::string& what) : std::invalid_argument(what) {}
};

// Requested operation is not defined for the given family or statistic.
class UnsupportedError : public DomainError {
 public:
  explicit UnsupportedError(const std::string& what) : DomainError(what) {}
};

// A critical value was requested before the corresponding calibration exists.
class CalibrationMissing : public DomainError {
 public:
  explicit CalibrationMissing(const std::string& what) : DomainError(what) {}
};

// Quadrature, eigenvalue or optimizer failure. Carries the achieved accuracy.
class NumericalError : public std::runtime_error {
 public:
  NumericalError(const std::string& what, double achieved = 0.0, std::string trace = {});
  double achieved() const { return achieved_; }
  const std::string& trace() const { return trace_; }

 private:
  double achieved_;
  std::string trace_;
};

}  // namespace expgof
