#pragma once

#include <complex>
#include <cstddef>
#include <stdexcept>
#include <string>

namespace fock {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// The truncation order cannot represent the requested point faithfully.
struct TruncationError : Error {
  TruncationError(const std::string& what, int required_order)
      : Error(what), required_order(required_order) {}
  int required_order;
};

struct IncompatibleError : Error {
  using Error::Error;
};

struct InvalidSchemeError : Error {
  using Error::Error;
};

// A quadrature node produced a non-finite integrand value.
struct EvaluationError : Error {
  EvaluationError(const std::string& what, std::complex<double> node, std::size_t index)
      : Error(what), node(node), index(index) {}
  std::complex<double> node;
  std::size_t index;
};

struct SymbolError : Error {
  using Error::Error;
};

struct NumericalError : Error {
  using Error::Error;
};

// Theorem C only applies once a finite S_z1 certificate exists.
struct HypothesisUnverifiedError : Error {
  using Error::Error;
};

struct ConfigError : Error {
  using Error::Error;
};

}  // namespace fock
