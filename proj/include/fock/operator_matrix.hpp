#pragma once

#include "fock/fock_vector.hpp"

#include <Eigen/Dense>

#include <iosfwd>

namespace fock {

/// Operator on the truncated space span{e_0..e_N}: A(m, n) = <S e_n, e_m>.
class OperatorMatrix {
 public:
  OperatorMatrix(FockParam alpha, Eigen::MatrixXcd entries);

  static OperatorMatrix identity(FockParam alpha, int order);
  static OperatorMatrix zero(FockParam alpha, int order);
  static OperatorMatrix diagonal(FockParam alpha, const Eigen::VectorXcd& diag);
  // f (x) g : h -> <h, g> f
  static OperatorMatrix rank_one(const FockVector& f, const FockVector& g);

  FockParam alpha() const { return alpha_; }
  int order() const { return static_cast<int>(a_.rows()) - 1; }
  const Eigen::MatrixXcd& matrix() const { return a_; }
  cdouble operator()(int m, int n) const { return a_(m, n); }

  FockVector apply(const FockVector& f) const;
  OperatorMatrix adjoint() const;

  // Leading (k+1) x (k+1) block.
  Eigen::MatrixXcd block(int k) const { return a_.topLeftCorner(k + 1, k + 1); }

  OperatorMatrix& operator+=(const OperatorMatrix& other);
  OperatorMatrix& operator-=(const OperatorMatrix& other);
  OperatorMatrix& operator*=(cdouble s);

 private:
  FockParam alpha_;
  Eigen::MatrixXcd a_;
};

OperatorMatrix operator+(OperatorMatrix a, const OperatorMatrix& b);
OperatorMatrix operator-(OperatorMatrix a, const OperatorMatrix& b);
OperatorMatrix operator*(const OperatorMatrix& a, const OperatorMatrix& b);
OperatorMatrix operator*(cdouble s, OperatorMatrix a);

// max |A(m,n) - B(m,n)| over the leading (k+1) block; k < 0 means everything
double max_abs_diff(const OperatorMatrix& a, const OperatorMatrix& b, int k = -1);

/// Plain-text form:
///   fock-matrix v1 alpha=<a> N=<n>
///   m n re im        (one line per entry, row-major, %.17g)
/// Vectors use the header "fock-vector v1" and "n re im" rows.
void write_matrix(std::ostream& os, const OperatorMatrix& m);
OperatorMatrix read_matrix(std::istream& is);
void write_vector(std::ostream& os, const FockVector& v);
FockVector read_vector(std::istream& is);

}  // namespace fock
