#include "fock/theorem_lab.hpp"

#include "fock/error.hpp"
#include "fock/gauss_rules.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numbers>
#include <numeric>

namespace fock {

namespace {

using json = nlohmann::ordered_json;
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

std::string g(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

void require_p_above_two(double p, const char* op) {
  if (!(p > 2.0) || !std::isfinite(p)) throw ConfigError(std::string(op) + " needs p > 2, got " + g(p));
}

json radii_json(const std::vector<double>& radii) { return json(radii); }

// Per-ring maxima of a pointwise quantity; untrusted rings are recorded and skipped.
struct RingProfile {
  std::vector<double> radius;
  std::vector<double> max;
  std::vector<double> argmax_angle;
  std::vector<std::size_t> rows;      // every point row
  std::vector<std::size_t> max_rows;  // one per trusted ring
};

RingProfile ring_profile(DiagnosticReport& rep, const std::string& series, const std::vector<double>& radii,
                         const LabSettings& s, const std::function<double(cdouble)>& fn) {
  RingProfile out;
  for (double r : radii) {
    double best = -1.0, best_angle = 0.0;
    bool trusted = s.trusted(r);
    for (int k = 0; k < s.angles; ++k) {
      const double th = 2.0 * std::numbers::pi * k / s.angles;
      const cdouble z = std::polar(r, th);
      if (!trusted) {
        out.rows.push_back(rep.add_untrusted(series, z));
        continue;
      }
      const double v = fn(z);
      out.rows.push_back(rep.add_row(series, z, std::nullopt, v, kNaN, true));
      if (v > best) {
        best = v;
        best_angle = th;
      }
    }
    if (!trusted) continue;
    out.radius.push_back(r);
    out.max.push_back(best);
    out.argmax_angle.push_back(best_angle);
    out.max_rows.push_back(rep.add_row(series + "_max", std::polar(r, best_angle), std::nullopt, best, kNaN, true));
  }
  return out;
}

std::string profile_text(const RingProfile& p) {
  std::string out;
  for (std::size_t i = 0; i < p.max.size(); ++i) out += (i ? ", " : "") + g(p.radius[i]) + ":" + g(p.max[i]);
  return out;
}

struct Proxies {
  double sv_tail = 0.0;
  std::vector<double> d_r;
  bool d_r_decays = false;
  bool compact = false;
  std::vector<std::size_t> rows;
};

// Singular-value tail mass beyond index N/2 and ||D_r|| = ||S - T_r|| over the
// radii plus the trusted radius sqrt(N/(2 alpha)).
Proxies compactness_proxies(DiagnosticReport& rep, const LabOperator& op, const std::vector<double>& radii,
                            const LabSettings& s, const QuadratureScheme& scheme) {
  Proxies out;
  const auto sv = singular_values(op.matrix);
  double total = 0.0, tail = 0.0;
  for (std::size_t k = 0; k < sv.size(); ++k) {
    total += sv[k] * sv[k];
    if (2 * k > sv.size() - 1) tail += sv[k] * sv[k];
  }
  out.sv_tail = total > 0.0 ? std::sqrt(tail / total) : 0.0;
  out.rows.push_back(rep.add_row("sv_tail_mass", 0.0, std::nullopt, out.sv_tail, s.decay_epsilon, true));

  std::vector<double> rs;
  for (double r : radii) {
    if (s.trusted(r)) rs.push_back(r);
  }
  rs.push_back(std::sqrt(0.5 * op.matrix.order() / s.alpha.value()));
  for (double r : rs) {
    const OperatorMatrix d = op.matrix - truncated_integral_operator(op.matrix, r, scheme);
    const double v = operator_norm(d);
    out.d_r.push_back(v);
    out.rows.push_back(rep.add_row("d_r_norm", r, std::nullopt, v, kNaN, true));
  }
  out.d_r_decays = decays(out.d_r, s.decay_epsilon, s.noise_floor);
  out.compact = out.sv_tail < s.decay_epsilon && out.d_r_decays;
  rep.scalars["sv_tail_mass"] = out.sv_tail;
  rep.scalars["d_r_last"] = out.d_r.back();
  rep.scalars["proxy_compact"] = out.compact ? 1.0 : 0.0;
  return out;
}

void base_parameters(DiagnosticReport& rep, const LabSettings& s, const QuadratureScheme& scheme) {
  rep.parameters["settings"] = s.to_json();
  rep.parameters["scheme"] = {{"radial_nodes", scheme.radial_count()},
                              {"angular_nodes", scheme.angular_count()},
                              {"max_radius", scheme.max_radius()},
                              {"exactness_degree", scheme.polynomial_exactness_degree()}};
}

std::vector<std::size_t> concat(std::vector<std::size_t> a, const std::vector<std::size_t>& b) {
  a.insert(a.end(), b.begin(), b.end());
  return a;
}

}  // namespace

double LabSettings::lab_radius() const { return std::sqrt(order / (8.0 * alpha.value())); }

bool LabSettings::trusted(cdouble z) const { return alpha.value() * std::norm(z) <= order / 8.0 * (1.0 + 1e-12); }

json LabSettings::to_json() const {
  return {{"alpha", alpha.value()},       {"N", order},
          {"angles", angles},             {"decay_epsilon", decay_epsilon},
          {"noise_floor", noise_floor},   {"tolerance", tolerance},
          {"hs_stability", hs_stability}, {"lab_radius", lab_radius()}};
}

LabOperator lab_operator(const Fixture& f, const LabSettings& s, const QuadratureScheme& scheme) {
  auto build = f.build;
  const FockParam alpha = s.alpha;
  const QuadratureScheme sch = scheme;
  return {f.description, build(alpha, s.order, scheme),
          [build, alpha, sch](int order) { return build(alpha, order, sch); }};
}

LabOperator lab_operator(std::string description, OperatorMatrix m) { return {std::move(description), std::move(m), {}}; }

std::vector<double> decay_radii(const LabSettings& s, double step) {
  std::vector<double> out;
  const double rmax = s.lab_radius();
  for (int k = 0;; ++k) {
    const double r = 1.0 + k * step;
    if (r > rmax * (1.0 + 1e-12)) break;
    out.push_back(r);
  }
  return out;
}

std::vector<cdouble> circle_grid(const std::vector<double>& radii, int angles, bool with_origin) {
  std::vector<cdouble> out;
  if (with_origin) out.push_back(0.0);
  for (double r : radii) {
    for (int k = 0; k < angles; ++k) out.push_back(std::polar(r, 2.0 * std::numbers::pi * k / angles));
  }
  return out;
}

std::vector<cdouble> square_grid(double half_width, int n) {
  std::vector<cdouble> out;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      const double x = n == 1 ? 0.0 : -half_width + 2.0 * half_width * j / (n - 1);
      const double y = n == 1 ? 0.0 : -half_width + 2.0 * half_width * i / (n - 1);
      out.emplace_back(x, y);
    }
  }
  return out;
}

bool decays(const std::vector<double>& profile, double epsilon, double noise_floor) {
  if (profile.empty()) return false;
  if (!(profile.back() < epsilon)) return false;
  const std::size_t first = profile.size() >= 3 ? profile.size() - 3 : 0;
  for (std::size_t i = first + 1; i < profile.size(); ++i) {
    const double prev = std::max(profile[i - 1], noise_floor);
    const double cur = std::max(profile[i], noise_floor);
    if (cur > prev * (1.0 + 1e-9)) return false;
  }
  return true;
}

bool grows(const std::vector<double>& profile) {
  const std::size_t n = profile.size();
  if (n < 3) return false;
  return profile[n - 1] > profile[n - 2] && profile[n - 2] > profile[n - 3] && profile[n - 1] > 2.0 * profile[0];
}

DiagnosticReport lemma2_check(const LabOperator& op, double p, const std::vector<cdouble>& grid, const LabSettings& s,
                              const QuadratureScheme& scheme) {
  require_p_above_two(p, "lemma2_check");
  DiagnosticReport rep;
  rep.experiment = "kernel_pairing_envelope";
  rep.operator_description = op.description;
  base_parameters(rep, s, scheme);
  rep.parameters["p"] = p;
  rep.parameters["grid_points"] = grid.size();
  const double a = s.alpha.value();
  const double sigma = a * (p - 2.0) / (2.0 * p);
  rep.scalars["sigma"] = sigma;

  std::vector<std::size_t> rows;
  for (cdouble w : grid) {
    if (!s.trusted(w)) {
      for (cdouble z : grid) rows.push_back(rep.add_untrusted("log_pairing", z, w));
      continue;
    }
    const double log_c = std::log(s_z_one_p_norm(op.matrix, w, p, scheme));
    for (cdouble z : grid) {
      if (!s.trusted(z)) {
        rows.push_back(rep.add_untrusted("log_pairing", z, w));
        continue;
      }
      const KernelPairing kp = kernel_pairing(op.matrix, w, z);
      const double rhs = log_c + 0.5 * a * (std::norm(z) + std::norm(w)) - sigma * std::norm(z - w);
      rows.push_back(rep.add_row("log_pairing", z, w, kp.log_magnitude, rhs, true));
    }
  }
  rep.check_margins("log_envelope", rows, s.tolerance,
                    "log|<S K_w, K_z>| <= log||S_w 1||_p + (alpha/2)(|z|^2+|w|^2) - sigma|z-w|^2");
  rep.notes.push_back("uses the constant-1 pointwise estimate for L^p(d lambda_alpha) functions");
  return rep;
}

DiagnosticReport theorem_a_certificate(const LabOperator& op, double p, const std::vector<double>& radii,
                                       const LabSettings& s, const QuadratureScheme& scheme) {
  require_p_above_two(p, "theorem_a_certificate");
  DiagnosticReport rep;
  rep.experiment = "norm_bound_certificate";
  rep.operator_description = op.description;
  base_parameters(rep, s, scheme);
  rep.parameters["p"] = p;
  rep.parameters["radii"] = radii_json(radii);

  auto norm_at = [&](cdouble z) { return s_z_one_p_norm(op.matrix, z, p, scheme); };
  const double at_origin = norm_at(0.0);
  const std::size_t origin_row = rep.add_row("s_z_one_p_norm", 0.0, std::nullopt, at_origin, kNaN, true);
  const RingProfile prof = ring_profile(rep, "s_z_one_p_norm", radii, s, norm_at);

  double c = at_origin;
  for (double v : prof.max) c = std::max(c, v);
  const double bound = 2.0 * p * c / (p - 2.0);
  rep.scalars["C"] = c;
  rep.scalars["bound"] = bound;

  const bool growth = grows(prof.max);
  const auto hyp_rows = concat({origin_row}, prof.max_rows);
  if (growth) {
    rep.add_check("hypothesis_bounded", Verdict::fail, hyp_rows,
                  "max ||S_z 1||_p grows with the radius (" + profile_text(prof) +
                      "); no finite C is certified, so the norm bound is not tested");
    rep.add_check("norm_bound", Verdict::skipped, {}, "hypothesis not verified");
    rep.scalars["operator_norm"] = operator_norm(op.matrix);
    return rep;
  }
  rep.add_check("hypothesis_bounded", Verdict::pass, hyp_rows, "C = " + g(c) + " over the grid");

  const double norm = operator_norm(op.matrix);
  const std::size_t row = rep.add_row("operator_norm", 0.0, std::nullopt, norm, bound, true);
  const double slack = bound - norm;
  rep.scalars["operator_norm"] = norm;
  rep.scalars["slack"] = slack;
  rep.scalars["relative_slack"] = slack / bound;
  rep.tolerances["norm_bound"] = 0.0;
  rep.add_check("norm_bound", slack > 0.0 ? Verdict::pass : Verdict::fail, {row},
                "||S|| = " + g(norm) + " vs 2pC/(p-2) = " + g(bound) + ", slack " + g(slack));
  return rep;
}

DiagnosticReport theorem_b_diagnostic(const LabOperator& op, double p, const std::vector<double>& radii,
                                      const LabSettings& s, const QuadratureScheme& scheme) {
  require_p_above_two(p, "theorem_b_diagnostic");
  DiagnosticReport rep;
  rep.experiment = "decay_implies_compact";
  rep.operator_description = op.description;
  base_parameters(rep, s, scheme);
  rep.parameters["p"] = p;
  rep.parameters["radii"] = radii_json(radii);

  const RingProfile prof = ring_profile(rep, "s_z_one_p_norm", radii, s,
                                        [&](cdouble z) { return s_z_one_p_norm(op.matrix, z, p, scheme); });
  if (prof.max.empty()) {
    rep.add_check("implication", Verdict::untrusted_region, {}, "no trusted radius");
    return rep;
  }
  const bool hyp = decays(prof.max, s.decay_epsilon, s.noise_floor);
  const Proxies px = compactness_proxies(rep, op, radii, s, scheme);
  rep.scalars["hypothesis_decays"] = hyp ? 1.0 : 0.0;
  rep.tolerances["decay_epsilon"] = s.decay_epsilon;

  std::string detail = "profile " + profile_text(prof) + "; sv tail " + g(px.sv_tail) + "; ||D_r|| last " +
                       g(px.d_r.back());
  if (!hyp) {
    detail += "; hypothesis not satisfied, nothing to conclude";
  } else {
    detail += px.compact ? "; proxies decay" : "; proxies do not decay";
  }
  rep.add_check("implication", (!hyp || px.compact) ? Verdict::pass : Verdict::fail,
                concat(prof.max_rows, px.rows), detail);
  return rep;
}

DiagnosticReport theorem_c_report(const LabOperator& op, double p, const std::vector<double>& radii,
                                  const LabSettings& s, const QuadratureScheme& scheme,
                                  std::optional<GroundTruth> expected) {
  require_p_above_two(p, "theorem_c_report");
  DiagnosticReport rep;
  rep.experiment = "berezin_compactness";
  rep.operator_description = op.description;
  base_parameters(rep, s, scheme);
  rep.parameters["p"] = p;
  rep.parameters["radii"] = radii_json(radii);
  if (expected) rep.parameters["ground_truth"] = to_string(*expected);

  const RingProfile cert = ring_profile(rep, "s_z_one_p_norm", radii, s,
                                        [&](cdouble z) { return s_z_one_p_norm(op.matrix, z, p, scheme); });
  if (cert.max.empty()) throw HypothesisUnverifiedError("berezin_compactness: no trusted radius to certify C");
  if (grows(cert.max)) {
    throw HypothesisUnverifiedError("berezin_compactness: ||S_z 1||_p grows over the grid (" + profile_text(cert) +
                                    "), so no bound C certifies boundedness");
  }
  const double c = *std::max_element(cert.max.begin(), cert.max.end());
  rep.scalars["C"] = c;
  rep.add_check("hypothesis_bounded", Verdict::pass, cert.max_rows, "C = " + g(c));

  const RingProfile ber =
      ring_profile(rep, "berezin_abs", radii, s, [&](cdouble z) { return std::abs(berezin(op.matrix, z)); });
  const bool compact = decays(ber.max, s.decay_epsilon, s.noise_floor);
  const Proxies px = compactness_proxies(rep, op, radii, s, scheme);
  rep.scalars["compact"] = compact ? 1.0 : 0.0;
  rep.scalars["berezin_last"] = ber.max.back();
  rep.tolerances["decay_epsilon"] = s.decay_epsilon;

  std::string verdict = compact ? "compact" : "non-compact";
  if (!compact) {
    rep.scalars["witness_angle"] = ber.argmax_angle.back();
    verdict += " (Berezin transform " + g(ber.max.back()) + " at radius " + g(ber.radius.back()) + ", angle " +
               g(ber.argmax_angle.back()) + ")";
  }
  rep.notes.push_back("verdict: " + verdict);
  rep.add_check("berezin_vs_proxies", compact == px.compact ? Verdict::pass : Verdict::fail,
                concat(ber.max_rows, px.rows),
                "Berezin " + std::string(compact ? "decays" : "does not decay") + "; proxies " +
                    (px.compact ? "decay" : "do not decay") + " (sv tail " + g(px.sv_tail) + ", ||D_r|| last " +
                    g(px.d_r.back()) + ")");
  if (expected) {
    const bool truth = *expected == GroundTruth::compact;
    rep.add_check("ground_truth", compact == truth ? Verdict::pass : Verdict::fail, ber.max_rows,
                  std::string("expected ") + to_string(*expected) + ", measured " + verdict);
  }
  return rep;
}

DiagnosticReport lemma8_decay_comparison(const LabOperator& op, double p, double p_prime,
                                         const std::vector<double>& radii, const LabSettings& s,
                                         const QuadratureScheme& scheme) {
  if (!(p_prime > 2.0 && p_prime < p)) throw ConfigError("decay comparison needs 2 < p' < p");
  DiagnosticReport rep;
  rep.experiment = "decay_comparison";
  rep.operator_description = op.description;
  base_parameters(rep, s, scheme);
  rep.parameters["p"] = p;
  rep.parameters["p_prime"] = p_prime;
  rep.parameters["radii"] = radii_json(radii);

  const RingProfile lp = ring_profile(rep, "s_z_one_p_prime_norm", radii, s,
                                      [&](cdouble z) { return s_z_one_p_norm(op.matrix, z, p_prime, scheme); });
  const RingProfile ber =
      ring_profile(rep, "berezin_abs", radii, s, [&](cdouble z) { return std::abs(berezin(op.matrix, z)); });
  if (lp.max.empty()) {
    rep.add_check("decay_agreement", Verdict::untrusted_region, {}, "no trusted radius");
    return rep;
  }
  const bool a = decays(lp.max, s.decay_epsilon, s.noise_floor);
  const bool b = decays(ber.max, s.decay_epsilon, s.noise_floor);
  rep.scalars["p_prime_decays"] = a ? 1.0 : 0.0;
  rep.scalars["berezin_decays"] = b ? 1.0 : 0.0;
  rep.tolerances["decay_epsilon"] = s.decay_epsilon;
  rep.add_check("decay_agreement", a == b ? Verdict::pass : Verdict::fail, concat(lp.max_rows, ber.max_rows),
                std::string("||S_z 1||_p' ") + (a ? "decays" : "does not decay") + " [" + profile_text(lp) +
                    "]; Berezin " + (b ? "decays" : "does not decay") + " [" + profile_text(ber) + "]");
  return rep;
}

DiagnosticReport prop6_check(const LabOperator& op, double p, const std::vector<double>& radii, const LabSettings& s,
                             const QuadratureScheme& scheme) {
  require_p_above_two(p, "prop6_check");
  DiagnosticReport rep;
  rep.experiment = "hilbert_schmidt_criterion";
  rep.operator_description = op.description;
  base_parameters(rep, s, scheme);
  rep.parameters["p"] = p;
  rep.parameters["radii"] = radii_json(radii);

  const OperatorMatrix adj = op.matrix.adjoint();
  auto norm_of = [&](const OperatorMatrix& m, cdouble z) {
    return lp_norm_trusted(m.apply(normalized_kernel_coeffs(z, s.alpha, m.order())), p, scheme);
  };
  const RingProfile fwd = ring_profile(rep, "s_k_z_p_norm", radii, s, [&](cdouble z) { return norm_of(op.matrix, z); });
  const RingProfile bwd = ring_profile(rep, "s_adj_k_z_p_norm", radii, s, [&](cdouble z) { return norm_of(adj, z); });
  if (fwd.max.empty()) {
    rep.add_check("conclusion", Verdict::untrusted_region, {}, "no trusted radius");
    return rep;
  }
  const bool bounded = !grows(fwd.max) && !grows(bwd.max);
  const double sup_f = *std::max_element(fwd.max.begin(), fwd.max.end());
  const double sup_b = *std::max_element(bwd.max.begin(), bwd.max.end());
  rep.scalars["sup_s_k_z"] = sup_f;
  rep.scalars["sup_s_adj_k_z"] = sup_b;
  rep.scalars["hypothesis_bounded"] = bounded ? 1.0 : 0.0;

  const double hs = hs_norm(op.matrix);
  rep.scalars["hs_norm"] = hs;
  std::vector<std::size_t> rows = concat(fwd.max_rows, bwd.max_rows);
  rows.push_back(rep.add_row("hs_norm", static_cast<double>(op.matrix.order()), std::nullopt, hs, kNaN, true));
  if (!op.at_order) {
    rep.add_check("conclusion", Verdict::skipped, rows, "operator cannot be rebuilt at order 2N");
    return rep;
  }
  const OperatorMatrix doubled = op.at_order(2 * op.matrix.order());
  const double hs2 = hs_norm(doubled);
  const double change = std::abs(hs2 - hs) / std::max(hs2, 1e-300);
  rep.scalars["hs_norm_2N"] = hs2;
  rep.scalars["hs_relative_change"] = change;
  rows.push_back(rep.add_row("hs_norm", static_cast<double>(doubled.order()), std::nullopt, hs2, kNaN, true));
  rep.tolerances["hs_stability"] = s.hs_stability;
  if (bounded) {
    rep.add_check("conclusion", change < s.hs_stability ? Verdict::pass : Verdict::fail, rows,
                  "sups " + g(sup_f) + ", " + g(sup_b) + " bounded; ||S||_HS " + g(hs) + " -> " + g(hs2) +
                      " when N doubles (change " + g(change) + ")");
  } else {
    rep.add_check("conclusion", Verdict::pass, rows,
                  "consistent: ||S k_z||_p or ||S* k_z||_p grows over the grid, so the hypothesis fails; "
                  "||S||_HS " + g(hs) + " -> " + g(hs2) + " when N doubles");
  }
  return rep;
}

DiagnosticReport toeplitz_envelope_check(const SymbolSpec& psi, const std::vector<cdouble>& z_list,
                                         const std::vector<cdouble>& w_grid, const LabSettings& s,
                                         const QuadratureScheme& scheme) {
  DiagnosticReport rep;
  rep.experiment = "toeplitz_envelope";
  rep.operator_description = "toeplitz " + psi.description();
  base_parameters(rep, s, scheme);
  rep.parameters["sup_norm"] = psi.sup_norm();
  rep.parameters["z_points"] = z_list.size();
  rep.parameters["w_points"] = w_grid.size();

  const double a = s.alpha.value();
  const OperatorMatrix t = toeplitz(psi, s.alpha, s.order, scheme);
  std::vector<std::size_t> rows;
  for (cdouble z : z_list) {
    if (!s.trusted(z)) {
      for (cdouble w : w_grid) rows.push_back(rep.add_untrusted("abs_s_z_one", z, w));
      continue;
    }
    const FockVector f = s_z_one(t, z);
    for (cdouble w : w_grid) {
      if (!s.trusted(w)) {
        rows.push_back(rep.add_untrusted("abs_s_z_one", z, w));
        continue;
      }
      rows.push_back(rep.add_row("abs_s_z_one", z, w, std::abs(f.evaluate(w)),
                                 psi.sup_norm() * std::exp(0.25 * a * std::norm(w)), true));
    }
  }
  rep.check_margins("pointwise_envelope", rows, s.tolerance, "|(T_psi)_z 1(w)| <= ||psi||_inf e^{alpha|w|^2/4}");
  return rep;
}

std::vector<Fraction> envelope_exponents(int n) {
  std::vector<Fraction> out;
  Fraction f{4, 1};
  for (int k = 1; k <= n; ++k) {
    out.push_back(f);
    // 4(1 - 1/sigma) = 4(num - den)/num
    long long num = 4 * (f.num - f.den), den = f.num;
    const long long d = std::gcd(num, den);
    f = {num / d, den / d};
  }
  return out;
}

DiagnosticReport product_envelope_check(const std::vector<SymbolSpec>& symbols, const std::vector<cdouble>& z_list,
                                        const std::vector<cdouble>& w_grid, const LabSettings& s,
                                        const QuadratureScheme& scheme) {
  if (symbols.empty()) throw ConfigError("product_envelope_check needs at least one symbol");
  DiagnosticReport rep;
  rep.experiment = "product_envelope";
  base_parameters(rep, s, scheme);
  const int n = static_cast<int>(symbols.size());
  rep.parameters["factors"] = n;

  OperatorMatrix prod = OperatorMatrix::identity(s.alpha, s.order);
  std::string desc;
  double c_explicit = 1.0;
  for (const auto& psi : symbols) {
    prod = prod * toeplitz(psi, s.alpha, s.order, scheme);
    desc += (desc.empty() ? "T[" : " T[") + psi.description() + "]";
    c_explicit *= psi.sup_norm();
  }
  rep.operator_description = desc;

  // Exact recursion; its closed form is 2 + 2/k.
  const auto sig = envelope_exponents(std::max(n, 5));
  bool recursion_ok = true;
  std::string recursion;
  for (int k = 1; k <= static_cast<int>(sig.size()); ++k) {
    Fraction closed{2LL * k + 2, k};
    const long long d = std::gcd(closed.num, closed.den);
    closed = {closed.num / d, closed.den / d};
    recursion_ok = recursion_ok && sig[k - 1] == closed && sig[k - 1].num > 2 * sig[k - 1].den;
    recursion += (k > 1 ? ", " : "") + std::to_string(sig[k - 1].num) + "/" + std::to_string(sig[k - 1].den);
  }
  rep.add_check("exponent_recursion", recursion_ok ? Verdict::pass : Verdict::fail, {},
                "sigma_1..sigma_" + std::to_string(sig.size()) + " = " + recursion);
  for (int k = 0; k + 1 < n; ++k) c_explicit *= sig[k].value() / (sig[k].value() - 1.0);
  const double sigma_n = sig[n - 1].value();
  rep.scalars["sigma_n"] = sigma_n;
  rep.scalars["C_explicit"] = c_explicit;

  const double a = s.alpha.value();
  std::vector<std::size_t> rows;
  double c_fit = 0.0;
  // least squares of log|S_z 1(w)| against alpha|w|^2
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  int cnt = 0;
  for (cdouble z : z_list) {
    if (!s.trusted(z)) {
      for (cdouble w : w_grid) rows.push_back(rep.add_untrusted("abs_s_z_one", z, w));
      continue;
    }
    const FockVector f = s_z_one(prod, z);
    for (cdouble w : w_grid) {
      if (!s.trusted(w)) {
        rows.push_back(rep.add_untrusted("abs_s_z_one", z, w));
        continue;
      }
      const double x = a * std::norm(w);
      const double v = std::abs(f.evaluate(w));
      rows.push_back(rep.add_row("abs_s_z_one", z, w, v, c_explicit * std::exp(x / sigma_n), true));
      c_fit = std::max(c_fit, v * std::exp(-x / sigma_n));
      if (v > s.noise_floor) {
        const double y = std::log(v);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
        ++cnt;
      }
    }
  }
  rep.scalars["C_fitted"] = c_fit;
  if (cnt >= 2 && cnt * sxx - sx * sx > 0) rep.scalars["fitted_exponent"] = (cnt * sxy - sx * sy) / (cnt * sxx - sx * sx);
  rep.scalars["envelope_exponent"] = 1.0 / sigma_n;
  rep.check_margins("pointwise_envelope", rows, s.tolerance,
                    "|S_z 1(w)| <= C_n e^{alpha|w|^2/sigma_n}, sigma_n = " + g(sigma_n) + ", C_n = " + g(c_explicit));
  return rep;
}

DiagnosticReport noncompact_heat_demo(double sigma, const std::vector<int>& n_list, const QuadratureScheme& scheme,
                                      double tolerance) {
  if (!(sigma > 0.0) || !std::isfinite(sigma)) throw ConfigError("noncompact_heat_demo needs sigma > 0");
  if (n_list.empty()) throw ConfigError("noncompact_heat_demo needs at least one n");
  DiagnosticReport rep;
  rep.experiment = "heat_translation_demo";
  rep.operator_description = "B_sigma on L^2(dA), sigma = " + g(sigma);
  rep.parameters["sigma"] = sigma;
  rep.parameters["n_list"] = n_list;
  rep.parameters["scheme"] = {{"radial_nodes", scheme.radial_count()}, {"angular_nodes", scheme.angular_count()}};
  const FockParam sg(sigma);

  // Semigroup value: B_sigma B_sigma = B_{sigma/2}, so ||B_sigma chi||^2 = <B_{sigma/2} chi, chi>.
  const GaussRule rho = gauss_legendre(24, 0.0, 1.0);
  const int na = 48;
  std::vector<cdouble> pts;
  std::vector<double> wts;
  for (std::size_t i = 0; i < rho.size(); ++i) {
    for (int k = 0; k < na; ++k) {
      pts.push_back(std::polar(rho.nodes[i], 2.0 * std::numbers::pi * k / na));
      wts.push_back(rho.nodes[i] * rho.weights[i] * 2.0 * std::numbers::pi / na);
    }
  }
  double ref2 = 0.0;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    double inner = 0.0;
    for (std::size_t j = 0; j < pts.size(); ++j) inner += wts[j] * std::exp(-0.5 * sigma * std::norm(pts[i] - pts[j]));
    ref2 += wts[i] * inner;
  }
  const double reference = std::sqrt(sigma / (2.0 * std::numbers::pi) * ref2);
  rep.scalars["reference_norm"] = reference;

  // Direct route: B_sigma chi_{B(n,1)}(z) as a heat transform, squared and
  // integrated in polar coordinates about n.
  const double outer = 1.0 + std::sqrt(40.0 / sigma);
  const GaussRule orho = gauss_legendre(64, 0.0, outer);
  const int oang = 32;
  std::vector<std::size_t> dev_rows;
  double min_value = std::numeric_limits<double>::infinity();
  for (int n : n_list) {
    const SymbolSpec chi = SymbolSpec::disk(1.0, static_cast<double>(n));
    double sum = 0.0;
    for (std::size_t i = 0; i < orho.size(); ++i) {
      for (int k = 0; k < oang; ++k) {
        const cdouble z = static_cast<double>(n) + std::polar(orho.nodes[i], 2.0 * std::numbers::pi * k / oang);
        const double v = heat_transform(chi, z, sg, scheme).value.real();
        sum += orho.nodes[i] * orho.weights[i] * (2.0 * std::numbers::pi / oang) * v * v;
      }
    }
    const double value = std::sqrt(sum);
    min_value = std::min(min_value, value);
    rep.add_row("l2_norm", static_cast<double>(n), std::nullopt, value, kNaN, true);
    dev_rows.push_back(rep.add_row("relative_deviation", static_cast<double>(n), std::nullopt,
                                   std::abs(value - reference) / reference, tolerance, true));
  }
  rep.check_margins("translation_invariance", dev_rows, 0.0,
                    "||B_sigma chi_{B(n,1)}|| matches the semigroup value " + g(reference) + " within " +
                        g(tolerance) + " relative");
  rep.tolerances["relative"] = tolerance;
  rep.add_check("non_vanishing", min_value > 0.5 * reference ? Verdict::pass : Verdict::fail, dev_rows,
                "chi_{B(n,1)}/||chi|| -> 0 weakly while the image norms stay at " + g(min_value) +
                    ", so B_sigma is not compact");
  return rep;
}

DiagnosticReport pointwise_estimate_audit(const std::vector<double>& p_list, const std::vector<cdouble>& z_list,
                                          const LabSettings& s, const QuadratureScheme& scheme) {
  DiagnosticReport rep;
  rep.experiment = "pointwise_estimate_audit";
  rep.operator_description = "entire test functions";
  base_parameters(rep, s, scheme);
  rep.parameters["p_list"] = p_list;
  rep.parameters["z_points"] = z_list.size();

  const int n = s.order;
  struct Item {
    std::string name;
    FockVector f;
  };
  KernelCombo combo(s.alpha);
  combo.add(1.0, {0.5, 0.0}).add({0.0, -0.5}, {-1.0, 0.5});
  std::vector<Item> corpus = {
      {"1", FockVector::basis(s.alpha, n, 0)},
      {"e_3", FockVector::basis(s.alpha, n, 3)},
      {"k_0.5", normalized_kernel_coeffs(0.5, s.alpha, n)},
      {"k_1+i", normalized_kernel_coeffs({1.0, 1.0}, s.alpha, n)},
      {"combo", combo.project(n)},
  };

  std::vector<std::size_t> safe_rows;
  std::size_t strong_violations = 0;
  for (const auto& item : corpus) {
    for (double p : p_list) {
      for (cdouble z : z_list) {
        const Lemma1Audit au = lemma1_audit(item.f, p, z, scheme);
        safe_rows.push_back(rep.add_row("ratio_constant_one:" + item.name + ":p=" + g(p), z, std::nullopt, au.ratio,
                                        1.0, s.trusted(z)));
        if (!au.strong_holds()) ++strong_violations;
      }
    }
  }
  rep.check_margins("constant_one", safe_rows, 1e-8, "|f(z)| <= ||f||_p e^{beta|z|^2/2}, beta = 2 alpha/p");
  rep.scalars["strong_constant_violations"] = static_cast<double>(strong_violations);

  // f = 1, z = 0, p = 4: |f(0)| = 1 and ||f||_4 = 1, while (beta/alpha)^{1/4} = 2^{-1/4}.
  const Lemma1Audit ce = lemma1_audit(FockVector::basis(s.alpha, n, 0), 4.0, 0.0, scheme);
  const std::size_t row = rep.add_row("strong_constant_f1_z0_p4", 0.0, std::nullopt, ce.lhs, ce.rhs_strong, true);
  rep.scalars["strong_rhs_f1_z0_p4"] = ce.rhs_strong;
  rep.add_check("strong_constant_counterexample", ce.strong_holds() ? Verdict::fail : Verdict::pass, {row},
                "the (beta/alpha)^{1/p} constant gives " + g(ce.rhs_strong) + " < |f(0)| = " + g(ce.lhs) +
                    " for f = 1, p = 4; only the constant-1 bound is used downstream");
  rep.notes.push_back("discrepancy: the pointwise estimate with constant (beta/alpha)^{1/p} fails for f = 1, z = 0, "
                      "p = 4 (ratio 1 > 0.8409); the constant 1 is sharp and is the one relied on");
  return rep;
}

}  // namespace fock
