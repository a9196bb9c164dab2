#include "fock/operators.hpp"

#include "fock/error.hpp"
#include "fock/gauss_rules.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <variant>

namespace fock {

namespace {

[[noreturn]] void truncation(const char* op, double x, int order, int needed) {
  std::ostringstream os;
  os << op << ": alpha|z|^2 = " << x << " is outside the trusted region of N = " << order << "; need N >= "
     << needed;
  throw TruncationError(os.str(), needed);
}

void require_unitary_region(cdouble a, FockParam alpha, int order, const char* op) {
  const double x = alpha.value() * std::norm(a);
  if (x > 0.25 * order) truncation(op, x, order, static_cast<int>(std::ceil(4.0 * x)));
}

// U_a = W_a P with P f(w) = f(-w) and W_a the Weyl translation, a displacement
// with beta = sqrt(alpha) conj(a). Along the diagonal m = n + k,
// |<W_a e_n, e_m>| = d_n = sqrt(n!/m!) x^{k/2} e^{-x/2} L_n^{(k)}(x), x = |beta|^2,
// which obeys the normalized three-term recurrence
//   sqrt((n+1)(n+k+1)) d_{n+1} = (2n+1+k-x) d_n - sqrt(n(n+k)) d_{n-1}.
// Forward in n is the growing direction, so it is stable; the column
// recurrence in w is not (it cancels terms of size ~ sqrt(N)^n / sqrt(n!)).
Eigen::MatrixXcd unitary_entries(cdouble a, FockParam alpha, int order) {
  Eigen::MatrixXcd u = Eigen::MatrixXcd::Zero(order + 1, order + 1);
  const double x = alpha.value() * std::norm(a);
  if (x == 0.0) {
    for (int n = 0; n <= order; ++n) u(n, n) = n % 2 ? -1.0 : 1.0;
    return u;
  }
  const cdouble beta = std::sqrt(alpha.value()) * std::conj(a);
  const cdouble ph = beta / std::abs(beta);
  constexpr double kRescale = 1e150;
  const double log_rescale = std::log(kRescale);
  for (int k = 0; k <= order; ++k) {
    // d_n held as d * e^{scale}
    double scale = 0.5 * k * std::log(x) - 0.5 * x - 0.5 * std::lgamma(k + 1.0);
    double prev = 0.0, cur = 1.0;
    const cdouble below = std::pow(ph, k);          // m = n + k
    const cdouble above = std::pow(-std::conj(ph), k);  // m = n - k
    for (int n = 0; n + k <= order; ++n) {
      const double d = cur == 0.0 ? 0.0 : std::copysign(std::exp(scale + std::log(std::abs(cur))), cur);
      const double parity = n % 2 ? -1.0 : 1.0;
      u(n + k, n) = parity * below * d;
      if (k > 0) u(n, n + k) = ((n + k) % 2 ? -1.0 : 1.0) * above * d;
      const double next =
          ((2.0 * n + 1 + k - x) * cur - std::sqrt(static_cast<double>(n) * (n + k)) * prev) /
          std::sqrt((n + 1.0) * (n + k + 1.0));
      prev = cur;
      cur = next;
      if (std::abs(cur) > kRescale) {
        cur /= kRescale;
        prev /= kRescale;
        scale += log_rescale;
      }
    }
  }
  return u;
}

// Accumulates sum_j v_j w_j conj(e_m(z_j)) e_n(z_j) into a, in fixed node order.
void accumulate_nodes(Eigen::MatrixXcd& a, const std::vector<WeightedNode>& nodes, FockParam alpha) {
  const int cols = static_cast<int>(a.rows());
  std::vector<double> step(cols);
  for (int n = 0; n < cols; ++n) step[n] = std::sqrt(alpha.value() / (n + 1.0));
  constexpr std::size_t kChunk = 2048;
  Eigen::MatrixXcd b(kChunk, cols);
  Eigen::VectorXcd v(kChunk);
  for (std::size_t start = 0; start < nodes.size(); start += kChunk) {
    const std::size_t count = std::min(kChunk, nodes.size() - start);
    for (std::size_t j = 0; j < count; ++j) {
      const WeightedNode& node = nodes[start + j];
      cdouble e = std::exp(0.5 * node.log_weight);
      v(j) = node.value;
      // Entries below 1e-150 are dropped so the product never goes subnormal.
      for (int n = 0; n < cols; ++n) {
        b(j, n) = std::abs(e) < 1e-150 ? cdouble(0.0) : e;
        e *= node.z * step[n];
      }
    }
    const auto bj = b.topRows(count);
    a.noalias() += bj.adjoint() * (v.head(count).asDiagonal() * bj);
  }
}

// Closed or one-dimensional forms for primitives symmetric about the origin.
std::optional<Eigen::MatrixXcd> origin_matrix(const sym::Primitive& p, FockParam alpha, int order,
                                              const QuadratureScheme& scheme) {
  const int size = order + 1;
  if (std::holds_alternative<sym::Constant>(p)) return Eigen::MatrixXcd::Identity(size, size);
  if (const auto* d = std::get_if<sym::Disk>(&p); d && d->center == 0.0) {
    const auto diag = disk_diagonal(alpha.value() * d->radius * d->radius, order);
    Eigen::VectorXcd v(size);
    for (int n = 0; n < size; ++n) v(n) = diag[n];
    return Eigen::MatrixXcd(v.asDiagonal());
  }
  if (const auto* g = std::get_if<sym::Gaussian>(&p); g && g->center == 0.0) {
    // (alpha/(alpha+t))^{n+1} integral s^n e^{-s}/n! ds, the latter by Laguerre
    const GaussRule rule = 2 * scheme.radial_count() - 1 >= order ? gauss_laguerre(scheme.radial_count())
                                                                  : gauss_laguerre(order / 2 + 1);
    const double lr = std::log(alpha.value() / (alpha.value() + g->t));
    Eigen::VectorXcd v(size);
    for (int n = 0; n < size; ++n) {
      double s = 0.0;
      for (std::size_t j = 0; j < rule.size(); ++j) {
        s += std::exp(rule.log_weights[j] + n * std::log(rule.nodes[j]) - std::lgamma(n + 1.0));
      }
      v(n) = std::exp((n + 1) * lr) * s;
    }
    return Eigen::MatrixXcd(v.asDiagonal());
  }
  if (const auto* h = std::get_if<sym::HalfPlane>(&p); h && h->offset == 0.0) {
    // radial Gamma((n+m)/2+1)/sqrt(n!m!) times angular e^{ik theta} sin(k pi/2)/(pi k)
    Eigen::MatrixXcd a(size, size);
    for (int m = 0; m < size; ++m) {
      for (int n = 0; n < size; ++n) {
        const int k = n - m;
        const double radial =
            std::exp(std::lgamma(0.5 * (n + m) + 1.0) - 0.5 * (std::lgamma(n + 1.0) + std::lgamma(m + 1.0)));
        const cdouble angular = k == 0 ? cdouble(0.5)
                                       : std::polar(std::sin(0.5 * k * std::numbers::pi) / (std::numbers::pi * k),
                                                    k * h->angle);
        a(m, n) = radial * angular;
      }
    }
    return a;
  }
  return std::nullopt;
}

}  // namespace

std::vector<double> disk_diagonal(double x, int order) {
  std::vector<double> out(order + 1, 0.0);
  if (x <= 0.0) return out;
  const int nodes = order / 2 + static_cast<int>(std::ceil(0.5 * x)) + 48;
  const GaussRule rule = gauss_legendre(nodes, 0.0, x);
  for (int n = 0; n <= order; ++n) {
    double s = 0.0;
    for (std::size_t j = 0; j < rule.size(); ++j) {
      const double t = rule.nodes[j];
      s += std::exp(rule.log_weights[j] + n * std::log(t) - t - std::lgamma(n + 1.0));
    }
    out[n] = std::min(s, 1.0);
  }
  return out;
}

OperatorMatrix translation_unitary(cdouble a, FockParam alpha, int order) {
  if (order < 0) throw IncompatibleError("translation_unitary: order must be non-negative");
  require_unitary_region(a, alpha, order, "translation_unitary");
  Eigen::MatrixXcd u = unitary_entries(a, alpha, order);

  // Pointwise cross-check of the middle column: (U_a e_n)(a/2) = e_n(a/2).
  const int n0 = order / 2;
  const cdouble w = 0.5 * a;
  const FockVector col(alpha, u.col(n0));
  const cdouble expected =
      std::exp(0.5 * (n0 * std::log(alpha.value()) - std::lgamma(n0 + 1.0))) * std::pow(w, n0);
  const double missing = std::max(0.0, 1.0 - col.coeffs().squaredNorm());
  const double tol = 1e-9 * (1.0 + std::abs(expected)) +
                     2.0 * std::sqrt(missing) * std::exp(0.5 * alpha.value() * std::norm(w));
  if (!(std::abs(col.evaluate(w) - expected) <= tol)) {
    std::ostringstream os;
    os << "translation_unitary: column " << n0 << " fails the pointwise check at a/2 (|diff| = "
       << std::abs(col.evaluate(w) - expected) << ")";
    throw NumericalError(os.str());
  }
  return OperatorMatrix(alpha, std::move(u));
}

OperatorMatrix toeplitz(const SymbolSpec& psi, FockParam alpha, int order, const QuadratureScheme& scheme) {
  if (order < 0) throw IncompatibleError("toeplitz: order must be non-negative");
  const int size = order + 1;
  Eigen::MatrixXcd a = Eigen::MatrixXcd::Zero(size, size);
  std::vector<WeightedNode> general;
  for (const auto& term : psi.terms()) {
    if (term.coef == 0.0) continue;
    if (auto m = origin_matrix(term.primitive, alpha, order, scheme)) {
      a += term.coef * *m;
      continue;
    }
    auto part = primitive_nodes(term.primitive, alpha, scheme, order);
    for (auto& n : part) n.value *= term.coef;
    general.insert(general.end(), part.begin(), part.end());
  }
  // Declared bound against the full symbol at every node used.
  for (std::size_t i = 0; i < general.size(); ++i) {
    const cdouble v = psi.evaluate(general[i].z);
    if (std::abs(v) > psi.sup_norm() * (1.0 + 1e-12) + 1e-300) {
      std::ostringstream os;
      os << "toeplitz: declared sup-norm " << psi.sup_norm() << " is below |psi| = " << std::abs(v);
      throw SymbolError(os.str());
    }
  }
  accumulate_nodes(a, general, alpha);
  for (Eigen::Index i = 0; i < a.size(); ++i) {
    const cdouble v = a.data()[i];
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) throw NumericalError("toeplitz: non-finite entry");
  }
  return OperatorMatrix(alpha, std::move(a));
}

Conjugation conjugate_with_leakage(const OperatorMatrix& s, cdouble z) {
  require_unitary_region(z, s.alpha(), s.order(), "conjugate");
  const OperatorMatrix u = translation_unitary(z, s.alpha(), s.order());
  const Eigen::VectorXd mass = u.matrix().colwise().squaredNorm();
  double trusted = 0.0, full = 0.0;
  for (int n = 0; n <= s.order(); ++n) {
    const double miss = std::max(0.0, 1.0 - mass(n));
    full = std::max(full, miss);
    if (2 * n <= s.order()) trusted = std::max(trusted, miss);
  }
  return {OperatorMatrix(s.alpha(), u.matrix() * s.matrix() * u.matrix()), trusted, full};
}

OperatorMatrix conjugate(const OperatorMatrix& s, cdouble z) { return conjugate_with_leakage(s, z).matrix; }

FockVector s_z_one(const OperatorMatrix& s, cdouble z) {
  require_unitary_region(z, s.alpha(), s.order(), "s_z_one");
  const OperatorMatrix u = translation_unitary(z, s.alpha(), s.order());
  const FockVector kz = normalized_kernel_coeffs(z, s.alpha(), s.order());
  return u.apply(s.apply(kz));
}

double s_z_one_p_norm(const OperatorMatrix& s, cdouble z, double p, const QuadratureScheme& scheme) {
  return lp_norm_trusted(s_z_one(s, z), p, scheme);
}

cdouble berezin(const OperatorMatrix& s, cdouble z) {
  const FockVector kz = normalized_kernel_coeffs(z, s.alpha(), s.order());
  return inner_product(s.apply(kz), kz);
}

HeatTransform heat_transform(const SymbolSpec& psi, cdouble z, FockParam alpha, const QuadratureScheme& scheme) {
  const auto nodes = psi.composed_with_involution(z).nodes(alpha, scheme, 0);
  cdouble total = 0.0;
  for (const auto& n : nodes) total += std::exp(n.log_weight) * n.value;
  return {total, psi.heat_closed_form(z, alpha)};
}

cdouble heat_transform_area_form(const SymbolSpec& psi, cdouble z, FockParam alpha, const QuadratureScheme& scheme) {
  // (alpha/pi) e^{-alpha|z-w|^2} dA = e^{alpha|w|^2 - alpha|z-w|^2} d lambda_alpha
  const double a = alpha.value();
  const int degree = 32 + static_cast<int>(std::ceil(4.0 * a * std::norm(z)));
  const auto nodes = psi.nodes(alpha, scheme, degree);
  cdouble total = 0.0;
  for (const auto& n : nodes) {
    const double g = a * std::norm(n.z) - a * std::norm(z - n.z);
    total += std::exp(n.log_weight + g) * n.value;
  }
  return total;
}

KernelPairing kernel_pairing(const OperatorMatrix& s, cdouble w, cdouble z) {
  const FockVector kw = normalized_kernel_coeffs(w, s.alpha(), s.order());
  const FockVector kz = normalized_kernel_coeffs(z, s.alpha(), s.order());
  const cdouble v = inner_product(s.apply(kw), kz);
  const double scale = 0.5 * s.alpha().value() * (std::norm(z) + std::norm(w));
  return {std::log(std::abs(v)) + scale, std::arg(v)};
}

std::vector<double> singular_values(const OperatorMatrix& s) {
  Eigen::BDCSVD<Eigen::MatrixXcd> svd(s.matrix());
  const Eigen::VectorXd sv = svd.singularValues();
  std::vector<double> out(sv.data(), sv.data() + sv.size());
  for (double v : out) {
    if (!std::isfinite(v)) throw NumericalError("singular value decomposition produced a non-finite value");
  }
  return out;
}

double operator_norm(const OperatorMatrix& s) { return singular_values(s).front(); }

double hs_norm(const OperatorMatrix& s) { return s.matrix().norm(); }

OperatorMatrix truncated_integral_operator(const OperatorMatrix& s, double r, const QuadratureScheme& scheme) {
  if (!(r >= 0.0)) throw ConfigError("truncated_integral_operator: radius must be >= 0");
  if (r == 0.0) return OperatorMatrix::zero(s.alpha(), s.order());
  const double x = s.alpha().value() * r * r;
  if (x > 0.5 * s.order()) truncation("truncated_integral_operator", x, s.order(), static_cast<int>(std::ceil(2.0 * x)));
  return s * toeplitz(SymbolSpec::disk(r), s.alpha(), s.order(), scheme);
}

}  // namespace fock
