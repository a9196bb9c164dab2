#include "fock/gauss_rules.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <stdexcept>

namespace fock {
namespace {

// Golub-Welsch: eigenvalues of the symmetric Jacobi matrix give starting nodes.
Eigen::VectorXd jacobi_eigenvalues(const Eigen::VectorXd& diag, const Eigen::VectorXd& sub) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver;
  solver.computeFromTridiagonal(diag, sub, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) throw std::runtime_error("Jacobi eigensolve failed");
  return solver.eigenvalues();
}

// Recurrences run in long double: node and weight errors at the extreme
// nodes otherwise reach ~1e-11 relative for n >= 128.
using real = long double;

struct LegendreValue {
  real p;   // P_n(x)
  real dp;  // P_n'(x)
};

LegendreValue legendre(int n, real x) {
  real p0 = 1.0L, p1 = x;
  if (n == 0) return {1.0L, 0.0L};
  for (int k = 1; k < n; ++k) {
    const real p2 = ((2.0L * k + 1.0L) * x * p1 - k * p0) / (k + 1.0L);
    p0 = p1;
    p1 = p2;
  }
  const real dp = n * (x * p1 - p0) / (x * x - 1.0L);
  return {p1, dp};
}

// Laguerre values L_{n-1}, L_n, L_{n+1} at x, all multiplied by e^{-log_scale}.
struct LaguerreValue {
  real prev, cur, next;
  real log_scale;
};

LaguerreValue laguerre(int n, real x) {
  real l0 = 1.0L, l1 = 1.0L - x;
  real log_scale = 0.0L;
  // l0 = L_{k-1}, l1 = L_k with running k; start k = 1.
  for (int k = 1; k <= n; ++k) {
    const real l2 = ((2.0L * k + 1.0L - x) * l1 - k * l0) / (k + 1.0L);
    l0 = l1;
    l1 = l2;
    const real mag = std::fabs(l1);
    if (mag > 1e150L) {
      l0 /= mag;
      l1 /= mag;
      log_scale += std::log(mag);
    }
  }
  // now l0 = L_n, l1 = L_{n+1}; recover L_{n-1} from
  // (n+1) L_{n+1} = (2n+1-x) L_n - n L_{n-1}
  const real prev = n > 0 ? ((2.0L * n + 1.0L - x) * l0 - (n + 1.0L) * l1) / n : 0.0L;
  return {prev, l0, l1, log_scale};
}

}  // namespace

GaussRule gauss_legendre(int n) {
  if (n < 1) throw std::invalid_argument("gauss_legendre: n must be positive");
  Eigen::VectorXd diag = Eigen::VectorXd::Zero(n);
  Eigen::VectorXd sub(std::max(n - 1, 0));
  for (int k = 1; k < n; ++k) sub(k - 1) = k / std::sqrt(4.0 * k * k - 1.0);
  const Eigen::VectorXd guess = jacobi_eigenvalues(diag, sub);

  GaussRule rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  rule.log_weights.resize(n);
  for (int i = 0; i < n; ++i) {
    real x = guess(i);
    for (int it = 0; it < 10; ++it) {
      const auto v = legendre(n, x);
      const real dx = v.p / v.dp;
      x -= dx;
      if (std::fabs(dx) < 1e-19L) break;
    }
    const auto v = legendre(n, x);
    rule.nodes[i] = static_cast<double>(x);
    rule.weights[i] = static_cast<double>(2.0L / ((1.0L - x * x) * v.dp * v.dp));
    rule.log_weights[i] = std::log(rule.weights[i]);
  }
  return rule;
}

GaussRule gauss_legendre(int n, double a, double b) {
  GaussRule rule = gauss_legendre(n);
  const double half = 0.5 * (b - a);
  const double mid = 0.5 * (b + a);
  for (std::size_t i = 0; i < rule.size(); ++i) {
    rule.nodes[i] = mid + half * rule.nodes[i];
    rule.weights[i] *= half;
    rule.log_weights[i] = std::log(rule.weights[i]);
  }
  return rule;
}

GaussRule gauss_laguerre(int n) {
  if (n < 1) throw std::invalid_argument("gauss_laguerre: n must be positive");
  Eigen::VectorXd diag(n);
  Eigen::VectorXd sub(std::max(n - 1, 0));
  for (int k = 0; k < n; ++k) diag(k) = 2.0 * k + 1.0;
  for (int k = 1; k < n; ++k) sub(k - 1) = k;
  const Eigen::VectorXd guess = jacobi_eigenvalues(diag, sub);

  GaussRule rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  rule.log_weights.resize(n);
  for (int i = 0; i < n; ++i) {
    real x = guess(i);
    for (int it = 0; it < 12; ++it) {
      const auto v = laguerre(n, x);
      const real deriv = n * (v.cur - v.prev) / x;
      const real dx = v.cur / deriv;
      x -= dx;
      if (std::fabs(dx) <= 1e-19L * x) break;
    }
    const auto v = laguerre(n, x);
    const real log_abs_next = std::log(std::fabs(v.next)) + v.log_scale;
    rule.nodes[i] = static_cast<double>(x);
    rule.log_weights[i] =
        static_cast<double>(std::log(x) - 2.0L * std::log(n + 1.0L) - 2.0L * log_abs_next);
    rule.weights[i] = std::exp(rule.log_weights[i]);
  }
  return rule;
}

}  // namespace fock
