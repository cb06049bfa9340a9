#pragma once

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace qfoundry {

/// Base of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Input violates an operation's precondition (bad dimension, unknown label, out-of-range parameter).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Collapse onto an outcome whose Born probability is zero.
class ImpossibleBranchError : public Error {
 public:
  using Error::Error;
};

/// A computed spectrum left its admissible range; the offending spectrum is attached.
class SpectrumError : public Error {
 public:
  SpectrumError(const std::string& what, std::vector<double> spectrum)
      : Error(what), spectrum_(std::move(spectrum)) {}
  const std::vector<double>& spectrum() const noexcept { return spectrum_; }

 private:
  std::vector<double> spectrum_;
};

/// An iterative or truncated computation did not reach its tolerance within the configured cap.
class ConvergenceError : public Error {
 public:
  using Error::Error;
};

/// Two independent numerical routes that must agree did not.
class CrossCheckError : public Error {
 public:
  using Error::Error;
};

}  // namespace qfoundry
