#pragma once

#include "fock/operator_matrix.hpp"
#include "fock/symbol.hpp"

#include <optional>
#include <vector>

namespace fock {

/// U_a f = (f o phi_a) k_a with phi_a(w) = a - w. Self-adjoint and unitary.
/// Requires alpha|a|^2 <= N/4; entries are exact for the block, the only
/// truncation is mass pushed beyond e_N.
OperatorMatrix translation_unitary(cdouble a, FockParam alpha, int order);

/// T_psi = P(psi .), entries <psi e_n, e_m> against d lambda_alpha.
OperatorMatrix toeplitz(const SymbolSpec& psi, FockParam alpha, int order, const QuadratureScheme& scheme);

struct Conjugation {
  OperatorMatrix matrix;
  // 1 - ||U_z e_n||^2 maximised over n <= N/2 and over all n.
  double leakage_trusted;
  double leakage_full;
};

/// S_z = U_z S U_z.
OperatorMatrix conjugate(const OperatorMatrix& s, cdouble z);
Conjugation conjugate_with_leakage(const OperatorMatrix& s, cdouble z);

/// S_z 1 = U_z S k_z.
FockVector s_z_one(const OperatorMatrix& s, cdouble z);
/// Integrated over alpha|w|^2 <= N/2 (lp_norm_trusted).
double s_z_one_p_norm(const OperatorMatrix& s, cdouble z, double p, const QuadratureScheme& scheme);

/// <S k_z, k_z>.
cdouble berezin(const OperatorMatrix& s, cdouble z);

struct HeatTransform {
  cdouble value;                     // quadrature
  std::optional<cdouble> closed_form;
};

/// B_alpha psi(z) = integral psi(z - w) d lambda_alpha(w).
HeatTransform heat_transform(const SymbolSpec& psi, cdouble z, FockParam alpha, const QuadratureScheme& scheme);
/// Same transform as (alpha/pi) integral psi(w) e^{-alpha|z-w|^2} dA(w).
cdouble heat_transform_area_form(const SymbolSpec& psi, cdouble z, FockParam alpha, const QuadratureScheme& scheme);

/// <S K_w, K_z> = exp(log_magnitude + i phase).
struct KernelPairing {
  double log_magnitude;
  double phase;
};
KernelPairing kernel_pairing(const OperatorMatrix& s, cdouble w, cdouble z);

double operator_norm(const OperatorMatrix& s);
double hs_norm(const OperatorMatrix& s);
std::vector<double> singular_values(const OperatorMatrix& s);

/// T_r f(z) = integral_{|w|<r} f(w) <S K_w, K_z> d lambda_alpha(w), i.e.
/// S T_{1_{B(0,r)}}. D_r = S - T_r.
OperatorMatrix truncated_integral_operator(const OperatorMatrix& s, double r, const QuadratureScheme& scheme);

/// Regularized lower incomplete gamma P(n+1, x) for n = 0..order, by
/// Gauss-Legendre on [0, x]; the diagonal of the disk Toeplitz operator.
std::vector<double> disk_diagonal(double x, int order);

}  // namespace fock
