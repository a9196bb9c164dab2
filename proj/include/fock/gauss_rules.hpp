#pragma once

#include <vector>

namespace fock {

/// One-dimensional Gauss rule. `log_weights` is kept alongside `weights`
/// because Laguerre weights underflow long before their nodes stop mattering
/// for integrands that grow like e^{ct}.
struct GaussRule {
  std::vector<double> nodes;
  std::vector<double> weights;
  std::vector<double> log_weights;

  std::size_t size() const { return nodes.size(); }
};

// Gauss-Legendre on [-1, 1].
GaussRule gauss_legendre(int n);

// Gauss-Legendre mapped onto [a, b].
GaussRule gauss_legendre(int n, double a, double b);

// Gauss-Laguerre for the weight e^{-t} on [0, inf).
GaussRule gauss_laguerre(int n);

}  // namespace fock
