#include "fock/operator_matrix.hpp"

#include "fock/error.hpp"

#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>

namespace fock {

namespace {

void require_same(const OperatorMatrix& a, const OperatorMatrix& b, const char* op) {
  if (!(a.alpha() == b.alpha()) || a.order() != b.order()) {
    std::ostringstream os;
    os << op << ": incompatible operators (alpha " << a.alpha().value() << " vs " << b.alpha().value()
       << ", N " << a.order() << " vs " << b.order() << ")";
    throw IncompatibleError(os.str());
  }
}

std::string g17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

// Parses "fock-<kind> v1 alpha=<a> N=<n>".
std::pair<FockParam, int> read_header(std::istream& is, const std::string& kind) {
  std::string line;
  if (!std::getline(is, line)) throw ConfigError("empty " + kind + " stream");
  std::istringstream hs(line);
  std::string tag, version, a_field, n_field;
  hs >> tag >> version >> a_field >> n_field;
  if (tag != "fock-" + kind || version != "v1" || a_field.rfind("alpha=", 0) != 0 ||
      n_field.rfind("N=", 0) != 0) {
    throw ConfigError("bad " + kind + " header: '" + line + "'");
  }
  try {
    const double alpha = std::stod(a_field.substr(6));
    const int n = std::stoi(n_field.substr(2));
    if (n < 0) throw ConfigError("negative order in header");
    return {FockParam(alpha), n};
  } catch (const std::logic_error&) {
    throw ConfigError("bad " + kind + " header: '" + line + "'");
  }
}

}  // namespace

OperatorMatrix::OperatorMatrix(FockParam alpha, Eigen::MatrixXcd entries)
    : alpha_(alpha), a_(std::move(entries)) {
  if (a_.rows() == 0 || a_.rows() != a_.cols()) throw IncompatibleError("operator matrix must be square and non-empty");
}

OperatorMatrix OperatorMatrix::identity(FockParam alpha, int order) {
  return OperatorMatrix(alpha, Eigen::MatrixXcd::Identity(order + 1, order + 1));
}

OperatorMatrix OperatorMatrix::zero(FockParam alpha, int order) {
  return OperatorMatrix(alpha, Eigen::MatrixXcd::Zero(order + 1, order + 1));
}

OperatorMatrix OperatorMatrix::diagonal(FockParam alpha, const Eigen::VectorXcd& diag) {
  return OperatorMatrix(alpha, diag.asDiagonal().toDenseMatrix());
}

OperatorMatrix OperatorMatrix::rank_one(const FockVector& f, const FockVector& g) {
  if (!(f.alpha() == g.alpha()) || f.order() != g.order()) throw IncompatibleError("rank_one: incompatible vectors");
  return OperatorMatrix(f.alpha(), f.coeffs() * g.coeffs().adjoint());
}

FockVector OperatorMatrix::apply(const FockVector& f) const {
  if (!(f.alpha() == alpha_) || f.order() != order()) throw IncompatibleError("apply: vector does not match operator");
  return FockVector(alpha_, a_ * f.coeffs());
}

OperatorMatrix OperatorMatrix::adjoint() const { return OperatorMatrix(alpha_, a_.adjoint()); }

OperatorMatrix& OperatorMatrix::operator+=(const OperatorMatrix& other) {
  require_same(*this, other, "operator+");
  a_ += other.a_;
  return *this;
}

OperatorMatrix& OperatorMatrix::operator-=(const OperatorMatrix& other) {
  require_same(*this, other, "operator-");
  a_ -= other.a_;
  return *this;
}

OperatorMatrix& OperatorMatrix::operator*=(cdouble s) {
  a_ *= s;
  return *this;
}

OperatorMatrix operator+(OperatorMatrix a, const OperatorMatrix& b) { return a += b; }
OperatorMatrix operator-(OperatorMatrix a, const OperatorMatrix& b) { return a -= b; }
OperatorMatrix operator*(cdouble s, OperatorMatrix a) { return a *= s; }

OperatorMatrix operator*(const OperatorMatrix& a, const OperatorMatrix& b) {
  require_same(a, b, "operator*");
  return OperatorMatrix(a.alpha(), a.matrix() * b.matrix());
}

double max_abs_diff(const OperatorMatrix& a, const OperatorMatrix& b, int k) {
  require_same(a, b, "max_abs_diff");
  const int n = k < 0 ? a.order() : std::min(k, a.order());
  return (a.block(n) - b.block(n)).cwiseAbs().maxCoeff();
}

void write_matrix(std::ostream& os, const OperatorMatrix& m) {
  os << "fock-matrix v1 alpha=" << g17(m.alpha().value()) << " N=" << m.order() << '\n';
  for (int i = 0; i <= m.order(); ++i) {
    for (int j = 0; j <= m.order(); ++j) {
      os << i << ' ' << j << ' ' << g17(m(i, j).real()) << ' ' << g17(m(i, j).imag()) << '\n';
    }
  }
}

OperatorMatrix read_matrix(std::istream& is) {
  const auto [alpha, n] = read_header(is, "matrix");
  Eigen::MatrixXcd a(n + 1, n + 1);
  for (int i = 0; i <= n; ++i) {
    for (int j = 0; j <= n; ++j) {
      int r = -1, c = -1;
      double re = 0, im = 0;
      if (!(is >> r >> c >> re >> im) || r != i || c != j) {
        throw ConfigError("matrix entry (" + std::to_string(i) + ", " + std::to_string(j) + ") missing or out of order");
      }
      a(i, j) = {re, im};
    }
  }
  return OperatorMatrix(alpha, std::move(a));
}

void write_vector(std::ostream& os, const FockVector& v) {
  os << "fock-vector v1 alpha=" << g17(v.alpha().value()) << " N=" << v.order() << '\n';
  for (int i = 0; i <= v.order(); ++i) os << i << ' ' << g17(v[i].real()) << ' ' << g17(v[i].imag()) << '\n';
}

FockVector read_vector(std::istream& is) {
  const auto [alpha, n] = read_header(is, "vector");
  Eigen::VectorXcd c(n + 1);
  for (int i = 0; i <= n; ++i) {
    int r = -1;
    double re = 0, im = 0;
    if (!(is >> r >> re >> im) || r != i) throw ConfigError("vector entry " + std::to_string(i) + " missing or out of order");
    c(i) = {re, im};
  }
  return FockVector(alpha, std::move(c));
}

}  // namespace fock
