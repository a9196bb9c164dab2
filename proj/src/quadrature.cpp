#include "fock/quadrature.hpp"

#include "fock/error.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>
#include <string>

namespace fock {

FockParam::FockParam(double alpha) : alpha_(alpha) {
  if (!(alpha > 0.0) || !std::isfinite(alpha)) {
    throw ConfigError("alpha must be a positive finite number, got " + std::to_string(alpha));
  }
}

namespace {

constexpr double kExactnessTolerance = 1e-12;

// log sum_i exp(x_i) for a fixed-order sequence
double log_sum_exp(const std::vector<double>& xs) {
  double m = -std::numeric_limits<double>::infinity();
  for (double x : xs) m = std::max(m, x);
  if (!std::isfinite(m)) return m;
  double s = 0.0;
  for (double x : xs) s += std::exp(x - m);
  return m + std::log(s);
}

[[noreturn]] void bad_node(const char* what, cdouble z, std::size_t index) {
  std::ostringstream os;
  os << what << " at node " << index << " (z = " << z.real() << (z.imag() < 0 ? " - " : " + ")
     << std::abs(z.imag()) << "i)";
  throw EvaluationError(os.str(), z, index);
}

}  // namespace

QuadratureScheme::QuadratureScheme(FockParam alpha, int radial_count, int angular_count)
    : QuadratureScheme(alpha, radial_count, angular_count, true) {}

QuadratureScheme::QuadratureScheme(FockParam alpha, int radial_count, int angular_count,
                                   bool with_half)
    : alpha_(alpha) {
  build(radial_count, angular_count, with_half);
}

void QuadratureScheme::build(int radial_count, int angular_count, bool with_half) {
  if (radial_count < 1) throw InvalidSchemeError("quadrature scheme needs at least one radial node");
  if (angular_count < 4) throw InvalidSchemeError("quadrature scheme needs at least 4 angular nodes");

  const GaussRule rule = gauss_laguerre(radial_count);
  radial_.resize(rule.size());
  for (std::size_t j = 0; j < rule.size(); ++j) {
    const double t = rule.nodes[j];
    radial_[j] = RadialNode{std::sqrt(t / alpha_.value()), t, rule.weights[j], rule.log_weights[j]};
    if (j > 0 && !(radial_[j].r > radial_[j - 1].r)) {
      throw InvalidSchemeError("radial nodes are not strictly increasing");
    }
  }

  angular_ = angular_count;
  phases_.resize(angular_count);
  for (int k = 0; k < angular_count; ++k) {
    const double theta = 2.0 * std::numbers::pi * k / angular_count;
    phases_[k] = {std::cos(theta), std::sin(theta)};
  }
  degree_ = std::min(2 * radial_count - 1, angular_count - 1);
  verify_exactness();

  if (with_half && radial_count >= 2 && angular_count >= 8) {
    half_ = std::shared_ptr<const QuadratureScheme>(
        new QuadratureScheme(alpha_, radial_count / 2, angular_count / 2, false));
  }
}

void QuadratureScheme::verify_exactness() const {
  // The product rule factors, so z^a conj(z)^b exactness reduces to radial
  // moments t^a (a = b) and angular sums of e^{i d theta} (d = a - b != 0).
  std::vector<double> terms(radial_.size());
  for (int a = 0; a <= degree_; ++a) {
    for (std::size_t j = 0; j < radial_.size(); ++j) {
      const double log_t = std::log(radial_[j].t);
      terms[j] = radial_[j].log_weight + a * log_t - std::lgamma(a + 1.0);
    }
    const double rel = std::abs(std::expm1(log_sum_exp(terms)));
    if (!(rel <= kExactnessTolerance)) {
      std::ostringstream os;
      os << "radial moment of order " << a << " off by " << rel;
      throw InvalidSchemeError(os.str());
    }
  }
  for (int d = 1; d <= degree_; ++d) {
    cdouble s = 0.0;
    for (int k = 0; k < angular_; ++k) {
      const double theta = 2.0 * std::numbers::pi * static_cast<double>(d) * k / angular_;
      s += cdouble(std::cos(theta), std::sin(theta));
    }
    if (!(std::abs(s) / angular_ <= kExactnessTolerance)) {
      throw InvalidSchemeError("angular rule not exact at frequency " + std::to_string(d));
    }
  }
}

QuadratureScheme QuadratureScheme::with_alpha(FockParam alpha) const {
  QuadratureScheme out = *this;
  out.alpha_ = alpha;
  for (auto& node : out.radial_) node.r = std::sqrt(node.t / alpha.value());
  if (half_) out.half_ = std::make_shared<const QuadratureScheme>(half_->with_alpha(alpha));
  return out;
}

namespace {

const QuadratureScheme& matching(FockParam alpha, const QuadratureScheme& scheme,
                                 QuadratureScheme& storage) {
  if (scheme.alpha() == alpha) return scheme;
  storage = scheme.with_alpha(alpha);
  return storage;
}

cdouble integrate_raw(const ComplexFn& f, const QuadratureScheme& scheme) {
  cdouble total = 0.0;
  scheme.for_each_node([&](std::size_t index, cdouble z, double w, double) {
    const cdouble v = f(z);
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) bad_node("non-finite integrand", z, index);
    total += w * v;
  });
  return total;
}

}  // namespace

cdouble integrate_gaussian(const ComplexFn& f, FockParam alpha, const QuadratureScheme& scheme) {
  QuadratureScheme storage = scheme;
  return integrate_raw(f, matching(alpha, scheme, storage));
}

IntegrationResult integrate_gaussian_with_estimate(const ComplexFn& f, FockParam alpha,
                                                   const QuadratureScheme& scheme) {
  QuadratureScheme storage = scheme;
  const QuadratureScheme& s = matching(alpha, scheme, storage);
  const cdouble full = integrate_raw(f, s);
  double err = std::numeric_limits<double>::infinity();
  if (s.half()) err = std::abs(full - integrate_raw(f, *s.half()));
  return {full, err};
}

cdouble integrate_area(const ComplexFn& g, const QuadratureScheme& scheme) {
  // dA = (pi/alpha) e^{alpha|z|^2} d lambda_alpha
  const double log_scale = std::log(std::numbers::pi / scheme.alpha().value());
  cdouble total = 0.0;
  std::size_t ring = 0;
  std::size_t per_ring = static_cast<std::size_t>(scheme.angular_count());
  scheme.for_each_node([&](std::size_t index, cdouble z, double, double lw) {
    const double t = scheme.radial_nodes()[ring].t;
    if ((index + 1) % per_ring == 0) ++ring;
    const cdouble v = g(z);
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) bad_node("non-finite integrand", z, index);
    if (v == 0.0) return;
    total += std::exp(lw + t + log_scale) * v;
  });
  return total;
}

double lp_lambda_norm_log(const LogAbsFn& log_abs_f, double p, FockParam alpha,
                          const QuadratureScheme& scheme) {
  if (!(p >= 1.0)) throw ConfigError("L^p norm needs p >= 1");
  return lp_lambda_quasinorm_log(log_abs_f, p, alpha, scheme);
}

double lp_lambda_quasinorm_log(const LogAbsFn& log_abs_f, double p, FockParam alpha,
                               const QuadratureScheme& scheme) {
  if (!(p > 0.0)) throw ConfigError("L^p functional needs p > 0");
  QuadratureScheme storage = scheme;
  const QuadratureScheme& s = matching(alpha, scheme, storage);
  std::vector<double> terms;
  terms.reserve(s.size());
  s.for_each_node([&](std::size_t index, cdouble z, double, double lw) {
    const double la = log_abs_f(z);
    if (std::isnan(la) || la == std::numeric_limits<double>::infinity()) {
      bad_node("non-finite |f|", z, index);
    }
    terms.push_back(lw + p * la);
  });
  return std::exp(log_sum_exp(terms) / p);
}

double lp_lambda_norm(const ComplexFn& f, double p, FockParam alpha, const QuadratureScheme& scheme) {
  return lp_lambda_norm_log([&](cdouble z) { return std::log(std::abs(f(z))); }, p, alpha, scheme);
}

double fock_p_norm_log(const LogAbsFn& log_abs_f, double p, FockParam alpha,
                       const QuadratureScheme& scheme) {
  if (!(p > 0.0)) throw ConfigError("F^p norm needs p > 0");
  // Nodes adapted to e^{-p alpha |z|^2 / 2}, the decay of the integrand.
  const FockParam adapted(p * alpha.value() / 2.0);
  const QuadratureScheme s = scheme.with_alpha(adapted);
  const double log_prefactor = std::log(p * alpha.value() / (2.0 * std::numbers::pi));
  const double log_area = std::log(std::numbers::pi / adapted.value());
  std::vector<double> terms;
  terms.reserve(s.size());
  std::size_t ring = 0;
  const std::size_t per_ring = static_cast<std::size_t>(s.angular_count());
  s.for_each_node([&](std::size_t index, cdouble z, double, double lw) {
    const double t = s.radial_nodes()[ring].t;
    if ((index + 1) % per_ring == 0) ++ring;
    const double la = log_abs_f(z);
    if (std::isnan(la) || la == std::numeric_limits<double>::infinity()) {
      bad_node("non-finite |f|", z, index);
    }
    // |f e^{-alpha|z|^2/2}|^p dA
    const double log_integrand = p * (la - 0.5 * alpha.value() * std::norm(z));
    terms.push_back(log_prefactor + log_area + lw + t + log_integrand);
  });
  return std::exp(log_sum_exp(terms) / p);
}

double fock_p_norm(const ComplexFn& f, double p, FockParam alpha, const QuadratureScheme& scheme) {
  return fock_p_norm_log([&](cdouble z) { return std::log(std::abs(f(z))); }, p, alpha, scheme);
}

}  // namespace fock
