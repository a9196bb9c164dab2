#include "fock/fock_vector.hpp"

#include "fock/error.hpp"

#include <unsupported/Eigen/FFT>

#include <cmath>
#include <limits>
#include <sstream>

namespace fock {

namespace {

double log_factorial(int n) { return std::lgamma(n + 1.0); }

void require_compatible(const FockVector& a, const FockVector& b, const char* op) {
  if (!(a.alpha() == b.alpha()) || a.order() != b.order()) {
    std::ostringstream os;
    os << op << ": incompatible vectors (alpha " << a.alpha().value() << " vs " << b.alpha().value()
       << ", N " << a.order() << " vs " << b.order() << ")";
    throw IncompatibleError(os.str());
  }
}

void require_trusted(FockParam alpha, cdouble z, int order, const char* op) {
  const TrustedRegion region(alpha, order);
  if (!region.contains(z)) {
    const int needed = TrustedRegion::required_order(alpha, z);
    std::ostringstream os;
    os << op << ": alpha|z|^2 = " << region.x(z) << " exceeds N/2 for N = " << order
       << "; need N >= " << needed;
    throw TruncationError(os.str(), needed);
  }
}

}  // namespace

double TrustedRegion::normalized_tail(cdouble z) const {
  const double xv = x(z);
  if (xv == 0.0) return 0.0;
  const double lx = std::log(xv);
  double sum = 0.0;
  const int last = order_ + 64 + static_cast<int>(xv + 40.0 * std::sqrt(xv));
  for (int n = order_ + 1; n <= last; ++n) {
    const double term = std::exp(-xv + n * lx - log_factorial(n));
    sum += term;
    if (n > xv && term < 1e-18 * sum) break;
  }
  return sum;
}

double TrustedRegion::normalized_tail_bound(cdouble z) const {
  const double xv = x(z);
  if (xv == 0.0) return 0.0;
  const int n1 = order_ + 1;
  const double log_lead = n1 * std::log(xv) - log_factorial(n1);
  if (xv < order_ + 2) {
    return std::exp(-xv + log_lead) / (1.0 - xv / (order_ + 2.0));
  }
  return std::min(1.0, std::exp(log_lead));
}

double TrustedRegion::log_kernel_tail(cdouble z) const { return x(z) + std::log(normalized_tail(z)); }

int TrustedRegion::required_order(FockParam alpha, cdouble z, double fraction, double tol) {
  int n = static_cast<int>(std::ceil(alpha.value() * std::norm(z) / fraction));
  while (TrustedRegion(alpha, n).normalized_tail_bound(z) > tol) ++n;
  return n;
}

FockVector::FockVector(FockParam alpha, Eigen::VectorXcd coeffs, double truncation_tail)
    : alpha_(alpha), coeffs_(std::move(coeffs)), tail_(truncation_tail) {
  if (coeffs_.size() == 0) throw IncompatibleError("FockVector needs at least one coefficient");
}

FockVector FockVector::zero(FockParam alpha, int order) {
  return FockVector(alpha, Eigen::VectorXcd::Zero(order + 1));
}

FockVector FockVector::basis(FockParam alpha, int order, int n) {
  Eigen::VectorXcd c = Eigen::VectorXcd::Zero(order + 1);
  c(n) = 1.0;
  return FockVector(alpha, std::move(c));
}

cdouble FockVector::evaluate(cdouble z) const {
  // Horner in the ratios e_n / e_{n-1} = z sqrt(alpha/n).
  const double a = alpha_.value();
  cdouble acc = coeffs_(order());
  for (int n = order(); n >= 1; --n) acc = coeffs_(n - 1) + acc * z * std::sqrt(a / n);
  return acc;
}

double FockVector::log_abs(cdouble z) const {
  const cdouble v = evaluate(z);
  if (std::isfinite(v.real()) && std::isfinite(v.imag())) return std::log(std::abs(v));
  // Overflowed: rescale every term by the largest basis magnitude.
  const double a = alpha_.value();
  const double lx = std::log(a * std::norm(z));
  double peak = -std::numeric_limits<double>::infinity();
  for (int n = 0; n <= order(); ++n) peak = std::max(peak, 0.5 * (n * lx - log_factorial(n)));
  const cdouble phase = z / std::abs(z);
  cdouble sum = 0.0;
  cdouble ph = 1.0;
  for (int n = 0; n <= order(); ++n) {
    sum += coeffs_(n) * ph * std::exp(0.5 * (n * lx - log_factorial(n)) - peak);
    ph *= phase;
  }
  return peak + std::log(std::abs(sum));
}

FockVector& FockVector::operator+=(const FockVector& other) {
  require_compatible(*this, other, "operator+");
  coeffs_ += other.coeffs_;
  tail_ += other.tail_;
  return *this;
}

FockVector& FockVector::operator-=(const FockVector& other) {
  require_compatible(*this, other, "operator-");
  coeffs_ -= other.coeffs_;
  tail_ += other.tail_;
  return *this;
}

FockVector& FockVector::operator*=(cdouble s) {
  coeffs_ *= s;
  tail_ *= std::norm(s);
  return *this;
}

FockVector operator+(FockVector a, const FockVector& b) { return a += b; }
FockVector operator-(FockVector a, const FockVector& b) { return a -= b; }
FockVector operator*(cdouble s, FockVector v) { return v *= s; }

cdouble KernelCombo::evaluate(cdouble z) const {
  cdouble s = 0.0;
  for (const auto& [c, w] : terms_) s += c * kernel(z, w, alpha_);
  return s;
}

FockVector KernelCombo::project(int order) const {
  FockVector out = FockVector::zero(alpha_, order);
  for (const auto& [c, w] : terms_) out += c * kernel_coeffs(w, alpha_, order);
  return out;
}

cdouble kernel(cdouble z, cdouble w, FockParam alpha) { return std::exp(log_kernel(z, w, alpha)); }

cdouble log_kernel(cdouble z, cdouble w, FockParam alpha) { return alpha.value() * z * std::conj(w); }

FockVector kernel_coeffs(cdouble w, FockParam alpha, int order) {
  if (order < 0) throw IncompatibleError("kernel_coeffs: order must be non-negative");
  require_trusted(alpha, w, order, "kernel_coeffs");
  Eigen::VectorXcd c(order + 1);
  const cdouble wb = std::conj(w);
  c(0) = 1.0;
  for (int n = 1; n <= order; ++n) c(n) = c(n - 1) * wb * std::sqrt(alpha.value() / n);
  const TrustedRegion region(alpha, order);
  return FockVector(alpha, std::move(c), std::exp(region.log_kernel_tail(w)));
}

FockVector normalized_kernel_coeffs(cdouble z, FockParam alpha, int order) {
  if (order < 0) throw IncompatibleError("normalized_kernel_coeffs: order must be non-negative");
  require_trusted(alpha, z, order, "normalized_kernel_coeffs");
  Eigen::VectorXcd c(order + 1);
  const cdouble zb = std::conj(z);
  c(0) = std::exp(-0.5 * alpha.value() * std::norm(z));
  for (int n = 1; n <= order; ++n) c(n) = c(n - 1) * zb * std::sqrt(alpha.value() / n);
  const TrustedRegion region(alpha, order);
  return FockVector(alpha, std::move(c), region.normalized_tail(z));
}

cdouble inner_product(const FockVector& f, const FockVector& g) {
  require_compatible(f, g, "inner_product");
  return g.coeffs().dot(f.coeffs());
}

std::vector<cdouble> ring_values(const FockVector& f, double r, int m) {
  // b_n = c_n sqrt(alpha^n/n!) r^n, folded mod m; f(r e^{i theta_k}) = sum_j B_j e^{i j theta_k}
  const double a = f.alpha().value();
  std::vector<cdouble> folded(m, 0.0);
  double scale = 1.0;
  for (int n = 0; n <= f.order(); ++n) {
    if (n > 0) scale *= r * std::sqrt(a / n);
    folded[n % m] += f[n] * scale;
  }
  Eigen::FFT<double> fft;
  fft.SetFlag(Eigen::FFT<double>::Unscaled);
  std::vector<cdouble> out;
  fft.inv(out, folded);
  return out;
}

double lp_norm(const FockVector& f, double p, const QuadratureScheme& scheme, double max_x) {
  if (!(p > 0.0)) throw ConfigError("L^p functional needs p > 0");
  const QuadratureScheme s = scheme.alpha() == f.alpha() ? scheme : scheme.with_alpha(f.alpha());
  const int m = s.angular_count();
  const double log_m = std::log(static_cast<double>(m));
  std::vector<double> terms;
  terms.reserve(s.size());
  std::size_t index = 0;
  const double a = f.alpha().value();
  for (const auto& node : s.radial_nodes()) {
    if (a * node.r * node.r > max_x) {
      index += m;
      continue;
    }
    const auto values = ring_values(f, node.r, m);
    for (int k = 0; k < m; ++k, ++index) {
      const double la = std::log(std::abs(values[k]));
      if (std::isnan(la) || la == std::numeric_limits<double>::infinity()) {
        throw EvaluationError("non-finite |f| in lp_norm", node.r * s.angular_phases()[k], index);
      }
      terms.push_back(node.log_weight - log_m + p * la);
    }
  }
  double peak = -std::numeric_limits<double>::infinity();
  for (double t : terms) peak = std::max(peak, t);
  if (!std::isfinite(peak)) return 0.0;
  double sum = 0.0;
  for (double t : terms) sum += std::exp(t - peak);
  return std::exp((peak + std::log(sum)) / p);
}

double lp_norm_trusted(const FockVector& f, double p, const QuadratureScheme& scheme) {
  return lp_norm(f, p, scheme, 0.5 * f.order());
}

namespace {

Lemma1Audit make_audit(double lhs, double norm_p, double p, cdouble z, FockParam alpha) {
  Lemma1Audit a{};
  a.p = p;
  a.beta = 2.0 * alpha.value() / p;
  a.z = z;
  a.lhs = lhs;
  a.norm_p = norm_p;
  a.rhs_safe = norm_p * std::exp(0.5 * a.beta * std::norm(z));
  a.rhs_strong = std::pow(a.beta / alpha.value(), 1.0 / p) * a.rhs_safe;
  a.ratio = lhs / a.rhs_safe;
  return a;
}

}  // namespace

Lemma1Audit lemma1_audit(const FockVector& f, double p, cdouble z, const QuadratureScheme& scheme) {
  if (!(p > 0.0)) throw ConfigError("lemma1_audit needs p > 0");
  const double norm_p = lp_norm(f, p, scheme);
  return make_audit(std::abs(f.evaluate(z)), norm_p, p, z, f.alpha());
}

Lemma1Audit lemma1_audit(const KernelCombo& f, double p, cdouble z, const QuadratureScheme& scheme) {
  if (!(p > 0.0)) throw ConfigError("lemma1_audit needs p > 0");
  const double norm_p = lp_lambda_quasinorm_log(
      [&](cdouble u) { return std::log(std::abs(f.evaluate(u))); }, p, f.alpha(), scheme);
  return make_audit(std::abs(f.evaluate(z)), norm_p, p, z, f.alpha());
}

}  // namespace fock
