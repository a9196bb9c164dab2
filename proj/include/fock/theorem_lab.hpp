#pragma once

#include "fock/fixtures.hpp"
#include "fock/report.hpp"

#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace fock {

/// Knobs shared by the experiments. Every value is echoed into the reports.
struct LabSettings {
  FockParam alpha{1.0};
  int order = 200;
  int angles = 16;
  double decay_epsilon = 1e-2;  // last profile sample must fall below this
  double noise_floor = 1e-13;   // profile values below this count as zero
  double tolerance = 1e-6;      // slack allowed in inequality checks
  double hs_stability = 0.05;   // relative HS change allowed when N doubles

  // Largest radius probed: alpha r^2 <= N/8, inside every operation's region.
  double lab_radius() const;
  bool trusted(cdouble z) const;
  nlohmann::ordered_json to_json() const;
};

/// An operator together with a way to rebuild it at another order.
struct LabOperator {
  std::string description;
  OperatorMatrix matrix;
  std::function<OperatorMatrix(int order)> at_order;
};

LabOperator lab_operator(const Fixture& f, const LabSettings& s, const QuadratureScheme& scheme);
LabOperator lab_operator(std::string description, OperatorMatrix m);

/// r in {1, 1.5, ...} up to the lab radius.
std::vector<double> decay_radii(const LabSettings& s, double step = 0.5);
/// Origin, then radius-major rings of s.angles points.
std::vector<cdouble> circle_grid(const std::vector<double>& radii, int angles, bool with_origin = true);
/// n x n points on [-h, h]^2, row-major in imaginary part.
std::vector<cdouble> square_grid(double half_width, int n);

/// Last sample below epsilon and non-increasing over the last three samples
/// (values under the noise floor compare equal).
bool decays(const std::vector<double>& profile, double epsilon, double noise_floor);
/// Last three samples increasing and the last more than twice the first.
bool grows(const std::vector<double>& profile);

/// log|<S K_w, K_z>| against log||S_w 1||_p + (alpha/2)(|z|^2+|w|^2) - sigma|z-w|^2,
/// sigma = alpha(p-2)/(2p), over all grid pairs.
DiagnosticReport lemma2_check(const LabOperator& op, double p, const std::vector<cdouble>& grid,
                              const LabSettings& s, const QuadratureScheme& scheme);

/// C = max ||S_z 1||_p over the grid, then ||S|| <= 2pC/(p-2).
DiagnosticReport theorem_a_certificate(const LabOperator& op, double p, const std::vector<double>& radii,
                                       const LabSettings& s, const QuadratureScheme& scheme);

/// Decay of max_{|z|=r} ||S_z 1||_p against singular-value tail mass and ||D_r||.
DiagnosticReport theorem_b_diagnostic(const LabOperator& op, double p, const std::vector<double>& radii,
                                      const LabSettings& s, const QuadratureScheme& scheme);

/// Compact iff the Berezin transform decays; refuses (HypothesisUnverifiedError)
/// when ||S_z 1||_p grows over the grid. `expected` adds a ground-truth check.
DiagnosticReport theorem_c_report(const LabOperator& op, double p, const std::vector<double>& radii,
                                  const LabSettings& s, const QuadratureScheme& scheme,
                                  std::optional<GroundTruth> expected = std::nullopt);

/// max ||S_z 1||_{p'} and max |S~(z)| decay together or not at all; 2 < p' < p.
DiagnosticReport lemma8_decay_comparison(const LabOperator& op, double p, double p_prime,
                                         const std::vector<double>& radii, const LabSettings& s,
                                         const QuadratureScheme& scheme);

/// sup ||S k_z||_p and sup ||S* k_z||_p; when bounded, ||S||_HS must settle as N doubles.
DiagnosticReport prop6_check(const LabOperator& op, double p, const std::vector<double>& radii,
                             const LabSettings& s, const QuadratureScheme& scheme);

/// |(T_psi)_z 1 (w)| <= ||psi||_inf e^{alpha|w|^2/4}.
DiagnosticReport toeplitz_envelope_check(const SymbolSpec& psi, const std::vector<cdouble>& z_list,
                                         const std::vector<cdouble>& w_grid, const LabSettings& s,
                                         const QuadratureScheme& scheme);

/// sigma_{k+1} = 4(1 - 1/sigma_k) from sigma_1 = 4, as exact fractions.
struct Fraction {
  long long num;
  long long den;
  double value() const { return static_cast<double>(num) / static_cast<double>(den); }
  friend bool operator==(Fraction, Fraction) = default;
};
std::vector<Fraction> envelope_exponents(int n);

/// S = T_{psi_1} ... T_{psi_n}; |S_z 1(w)| <= C_n e^{alpha|w|^2/sigma_n} with
/// C_n = prod ||psi_k|| prod_{k<n} sigma_k/(sigma_k - 1).
DiagnosticReport product_envelope_check(const std::vector<SymbolSpec>& symbols, const std::vector<cdouble>& z_list,
                                        const std::vector<cdouble>& w_grid, const LabSettings& s,
                                        const QuadratureScheme& scheme);

/// ||B_sigma chi_{B(n,1)}||_{L^2(dA)} for each n, direct quadrature against the
/// semigroup value ((sigma/2pi) int_{D x D} e^{-sigma|u-v|^2/2})^{1/2}.
DiagnosticReport noncompact_heat_demo(double sigma, const std::vector<int>& n_list, const QuadratureScheme& scheme,
                                      double tolerance = 1e-6);

/// |f(z)| against ||f||_p e^{beta|z|^2/2} (constant 1) and the stronger
/// (beta/alpha)^{1/p} variant over a corpus of entire functions.
DiagnosticReport pointwise_estimate_audit(const std::vector<double>& p_list, const std::vector<cdouble>& z_list,
                                          const LabSettings& s, const QuadratureScheme& scheme);

}  // namespace fock
