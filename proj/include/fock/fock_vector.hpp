#pragma once

#include "fock/quadrature.hpp"

#include <Eigen/Dense>

#include <complex>
#include <utility>
#include <limits>
#include <vector>

namespace fock {

/// Truncation-order bookkeeping. The basis e_n(z) = sqrt(alpha^n/n!) z^n up to
/// order N represents k_z faithfully only while x = alpha|z|^2 is well below N.
class TrustedRegion {
 public:
  TrustedRegion(FockParam alpha, int order) : alpha_(alpha), order_(order) {}

  FockParam alpha() const { return alpha_; }
  int order() const { return order_; }

  double x(cdouble z) const { return alpha_.value() * std::norm(z); }
  // alpha|z|^2 <= fraction * N
  bool contains(cdouble z, double fraction = 0.5) const { return x(z) <= fraction * order_; }
  // Largest |z| with alpha|z|^2 <= fraction * N.
  double radius(double fraction = 0.5) const { return std::sqrt(fraction * order_ / alpha_.value()); }

  // e^{-x} sum_{n>N} x^n/n!: the squared-norm mass of k_z beyond order N.
  double normalized_tail(cdouble z) const;
  // Ratio-test envelope for the same quantity.
  double normalized_tail_bound(cdouble z) const;
  // Raw kernel K_z: sum_{n>N} x^n/n! = e^{x} normalized_tail, as a log.
  double log_kernel_tail(cdouble z) const;

  // Smallest order whose trusted region (fraction) contains z with tail <= tol.
  static int required_order(FockParam alpha, cdouble z, double fraction = 0.5, double tol = 1e-12);

 private:
  FockParam alpha_;
  int order_;
};

/// An entire function through its coefficients c_0..c_N in the orthonormal
/// basis e_n(z) = sqrt(alpha^n/n!) z^n.
class FockVector {
 public:
  FockVector(FockParam alpha, Eigen::VectorXcd coeffs, double truncation_tail = 0.0);
  static FockVector zero(FockParam alpha, int order);
  static FockVector basis(FockParam alpha, int order, int n);

  FockParam alpha() const { return alpha_; }
  int order() const { return static_cast<int>(coeffs_.size()) - 1; }
  const Eigen::VectorXcd& coeffs() const { return coeffs_; }
  cdouble operator[](int n) const { return coeffs_(n); }

  // Squared-norm mass that the constructor knows was cut off at order N.
  double truncation_tail() const { return tail_; }

  double norm() const { return coeffs_.norm(); }

  cdouble evaluate(cdouble z) const;
  // log|f(z)| without overflow for large |z|.
  double log_abs(cdouble z) const;

  FockVector& operator+=(const FockVector& other);
  FockVector& operator-=(const FockVector& other);
  FockVector& operator*=(cdouble s);

 private:
  FockParam alpha_;
  Eigen::VectorXcd coeffs_;
  double tail_;
};

FockVector operator+(FockVector a, const FockVector& b);
FockVector operator-(FockVector a, const FockVector& b);
FockVector operator*(cdouble s, FockVector v);

/// Finite linear combination sum_k c_k K_{w_k}; the dense set of the space.
class KernelCombo {
 public:
  explicit KernelCombo(FockParam alpha) : alpha_(alpha) {}
  KernelCombo(FockParam alpha, std::vector<std::pair<cdouble, cdouble>> terms)
      : alpha_(alpha), terms_(std::move(terms)) {}

  KernelCombo& add(cdouble weight, cdouble center) {
    terms_.emplace_back(weight, center);
    return *this;
  }

  FockParam alpha() const { return alpha_; }
  const std::vector<std::pair<cdouble, cdouble>>& terms() const { return terms_; }

  cdouble evaluate(cdouble z) const;
  FockVector project(int order) const;

 private:
  FockParam alpha_;
  std::vector<std::pair<cdouble, cdouble>> terms_;
};

/// K(z, w) = e^{alpha z conj(w)}.
cdouble kernel(cdouble z, cdouble w, FockParam alpha);
/// log K(z, w) = alpha z conj(w), for when the exponential would overflow.
cdouble log_kernel(cdouble z, cdouble w, FockParam alpha);

/// Coefficients sqrt(alpha^n/n!) conj(w)^n of K_w. Throws TruncationError
/// outside the trusted region alpha|w|^2 <= N/2.
FockVector kernel_coeffs(cdouble w, FockParam alpha, int order);

/// Coefficients of k_z = K_z / sqrt(K(z,z)), computed without forming K_z.
FockVector normalized_kernel_coeffs(cdouble z, FockParam alpha, int order);

/// <f, g> = sum f_n conj(g_n).
cdouble inner_product(const FockVector& f, const FockVector& g);

inline cdouble evaluate(const FockVector& f, cdouble z) { return f.evaluate(z); }

/// f at the M points r e^{2 pi i k/M}, by one FFT of the folded coefficients.
std::vector<cdouble> ring_values(const FockVector& f, double r, int m);

/// (integral |f|^p d lambda_alpha)^{1/p} for p > 0 on the scheme's nodes,
/// ring by ring through ring_values; same node order and sum as
/// lp_lambda_quasinorm_log. Nodes with alpha|w|^2 > max_x are skipped.
double lp_norm(const FockVector& f, double p, const QuadratureScheme& scheme,
               double max_x = std::numeric_limits<double>::infinity());
/// lp_norm restricted to alpha|w|^2 <= N/2. Past that disk rounding noise in
/// the top coefficients, amplified like e^{(p/2-1)alpha|w|^2}, swamps any
/// function whose |f|^p e^{-alpha|w|^2} has already decayed there.
double lp_norm_trusted(const FockVector& f, double p, const QuadratureScheme& scheme);

/// The pointwise estimate |f(z)| <= C ||f||_p e^{beta|z|^2/2}, beta = 2 alpha/p,
/// with the sharp constant C = 1 and with C = (beta/alpha)^{1/p}.
struct Lemma1Audit {
  double p;
  double beta;
  cdouble z;
  double lhs;        // |f(z)|
  double norm_p;     // ||f||_p in L^p(d lambda_alpha)
  double rhs_safe;    // ||f||_p e^{beta|z|^2/2}
  double rhs_strong;  // (beta/alpha)^{1/p} rhs_safe
  double ratio;       // lhs / rhs_safe
  bool safe_holds(double tol = 1e-8) const { return ratio <= 1.0 + tol; }
  bool strong_holds() const { return lhs <= rhs_strong; }
};

Lemma1Audit lemma1_audit(const FockVector& f, double p, cdouble z, const QuadratureScheme& scheme);
Lemma1Audit lemma1_audit(const KernelCombo& f, double p, cdouble z, const QuadratureScheme& scheme);

}  // namespace fock
