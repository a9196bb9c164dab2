#pragma once

#include "fock/gauss_rules.hpp"

#include <cmath>
#include <complex>
#include <functional>
#include <memory>
#include <vector>

namespace fock {

using cdouble = std::complex<double>;
using ComplexFn = std::function<cdouble(cdouble)>;
// Returns log|f(z)|; lets norms of fast-growing functions avoid overflow.
using LogAbsFn = std::function<double(cdouble)>;

/// The weight parameter of the Gaussian measure; always positive.
class FockParam {
 public:
  explicit FockParam(double alpha);
  double value() const { return alpha_; }
  friend bool operator==(FockParam, FockParam) = default;

 private:
  double alpha_;
};

struct RadialNode {
  double r;           // radius
  double t;           // alpha r^2
  double weight;      // probability weight of the ring (summed over angles)
  double log_weight;
};

/**
 * Polar product rule for integrals against the Gaussian probability measure
 * (alpha/pi) e^{-alpha|z|^2} dA(z).
 *
 * Radially it is Gauss-Laguerre in t = alpha r^2, so z^a conj(z)^b e^{-alpha|z|^2}
 * is integrated exactly for a, b up to polynomial_exactness_degree(); angularly
 * it is the uniform M-point rule. Exactness is checked when the scheme is built.
 * Node order is radial-major, ascending radius then ascending angle, and every
 * sum over the scheme uses that order.
 */
class QuadratureScheme {
 public:
  static constexpr int kDefaultRadial = 128;
  static constexpr int kDefaultAngular = 256;

  QuadratureScheme(FockParam alpha, int radial_count = kDefaultRadial,
                   int angular_count = kDefaultAngular);

  FockParam alpha() const { return alpha_; }
  const std::vector<RadialNode>& radial_nodes() const { return radial_; }
  int radial_count() const { return static_cast<int>(radial_.size()); }
  int angular_count() const { return angular_; }
  double max_radius() const { return radial_.back().r; }
  int polynomial_exactness_degree() const { return degree_; }
  std::size_t size() const { return radial_.size() * static_cast<std::size_t>(angular_); }

  // Unit-modulus angular factors e^{i theta_k}.
  const std::vector<cdouble>& angular_phases() const { return phases_; }

  // Same node counts, measure rescaled to another alpha.
  QuadratureScheme with_alpha(FockParam alpha) const;

  // Half-resolution rule used for error estimates; null if too coarse.
  const QuadratureScheme* half() const { return half_.get(); }

  template <class F>
  void for_each_node(F&& f) const {
    std::size_t index = 0;
    const double inv_m = 1.0 / angular_;
    for (const auto& node : radial_) {
      const double w = node.weight * inv_m;
      const double lw = node.log_weight - std::log(static_cast<double>(angular_));
      for (const auto& ph : phases_) f(index++, node.r * ph, w, lw);
    }
  }

 private:
  QuadratureScheme(FockParam alpha, int radial_count, int angular_count, bool with_half);
  void build(int radial_count, int angular_count, bool with_half);
  void verify_exactness() const;

  FockParam alpha_;
  std::vector<RadialNode> radial_;
  std::vector<cdouble> phases_;
  int angular_ = 0;
  int degree_ = 0;
  std::shared_ptr<const QuadratureScheme> half_;
};

struct IntegrationResult {
  cdouble value;
  double error_estimate;
};

/// Integral of f against d lambda_alpha.
cdouble integrate_gaussian(const ComplexFn& f, FockParam alpha, const QuadratureScheme& scheme);

/// As above plus |rule - half-resolution rule| as the error estimate.
IntegrationResult integrate_gaussian_with_estimate(const ComplexFn& f, FockParam alpha,
                                                   const QuadratureScheme& scheme);

/// Integral of g against the area measure dA, for g decaying like the Gaussian
/// the scheme was built for.
cdouble integrate_area(const ComplexFn& g, const QuadratureScheme& scheme);

/// (integral |f|^p d lambda_alpha)^{1/p}.
double lp_lambda_norm(const ComplexFn& f, double p, FockParam alpha, const QuadratureScheme& scheme);
double lp_lambda_norm_log(const LogAbsFn& log_abs_f, double p, FockParam alpha,
                          const QuadratureScheme& scheme);
// Same functional for any p > 0 (a quasi-norm below 1).
double lp_lambda_quasinorm_log(const LogAbsFn& log_abs_f, double p, FockParam alpha,
                               const QuadratureScheme& scheme);

/// F^p_alpha norm: ((p alpha / 2 pi) integral |f(z) e^{-alpha|z|^2/2}|^p dA)^{1/p}.
double fock_p_norm(const ComplexFn& f, double p, FockParam alpha, const QuadratureScheme& scheme);
double fock_p_norm_log(const LogAbsFn& log_abs_f, double p, FockParam alpha,
                       const QuadratureScheme& scheme);

}  // namespace fock
