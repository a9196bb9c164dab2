#include "fock/cli.hpp"

#include "fock/error.hpp"
#include "fock/version.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <limits>
#include <ostream>
#include <random>
#include <sstream>

namespace fock {

namespace {

using json = nlohmann::ordered_json;
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream is(s);
  while (std::getline(is, cur, sep)) {
    if (!cur.empty()) out.push_back(cur);
  }
  return out;
}

double parse_double(const std::string& s, const std::string& what) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(s, &used);
  } catch (const std::exception&) {
    throw ConfigError(what + ": not a number: '" + s + "'");
  }
  if (used != s.size() || !std::isfinite(v)) throw ConfigError(what + ": not a finite number: '" + s + "'");
  return v;
}

std::vector<double> parse_doubles(const std::string& s, const std::string& what) {
  std::vector<double> out;
  for (const auto& t : split(s, ',')) out.push_back(parse_double(t, what));
  if (out.empty()) throw ConfigError(what + ": empty list");
  return out;
}

std::vector<cdouble> parse_points(const std::string& s) {
  std::vector<cdouble> out;
  for (const auto& t : split(s, ';')) {
    const auto xy = parse_doubles(t, "--points");
    if (xy.size() != 2) throw ConfigError("--points: expected x,y pairs separated by ';', got '" + t + "'");
    out.emplace_back(xy[0], xy[1]);
  }
  if (out.empty()) throw ConfigError("--points: empty list");
  return out;
}

int finish(const DiagnosticReport& r, const RunConfig& cfg, std::ostream& log) {
  log << summarize(r);
  write_report_files(r, cfg, log);
  return r.passed() ? kExitPass : kExitFailed;
}

// Verify helpers: one check per invariant, each over the grid.

void verify_quadrature(DiagnosticReport& rep, const RunConfig& cfg, const QuadratureScheme& scheme) {
  const FockParam alpha(cfg.alpha);
  std::vector<std::size_t> rows;
  for (int n = 0; n <= 20; ++n) {
    const cdouble v = integrate_gaussian([n](cdouble z) { return std::pow(std::norm(z), n); }, alpha, scheme);
    const double exact = std::exp(std::lgamma(n + 1.0) - n * std::log(cfg.alpha));
    rows.push_back(rep.add_row("moment_relative_error", static_cast<double>(n), std::nullopt,
                               std::abs(v - exact) / exact, 1e-10, true));
  }
  rep.check_margins("quadrature_exactness", rows, 0.0, "integral |z|^{2n} d lambda = n!/alpha^n, n <= 20");
}

void verify_kernels(DiagnosticReport& rep, const RunConfig& cfg, const std::vector<cdouble>& grid) {
  const FockParam alpha(cfg.alpha);
  const int n = cfg.order;
  std::mt19937_64 rng(cfg.seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  Eigen::VectorXcd c(n + 1);
  for (int k = 0; k <= n; ++k) c(k) = cdouble(gauss(rng), gauss(rng)) * std::pow(0.8, k);
  const FockVector f(alpha, c);
  std::vector<std::size_t> rows;
  for (cdouble z : grid) {
    if (cfg.alpha * std::norm(z) > 0.5 * n) {
      rows.push_back(rep.add_untrusted("reproducing_error", z));
      rows.push_back(rep.add_untrusted("normalized_kernel_norm_error", z));
      continue;
    }
    const cdouble direct = f.evaluate(z);
    const cdouble pair = inner_product(f, kernel_coeffs(z, alpha, n));
    rows.push_back(rep.add_row("reproducing_error", z, std::nullopt, std::abs(direct - pair) / (1.0 + std::abs(direct)),
                               1e-8, true));
    const FockVector k = normalized_kernel_coeffs(z, alpha, n);
    rows.push_back(rep.add_row("normalized_kernel_norm_error", z, std::nullopt, std::abs(k.norm() * k.norm() - 1.0),
                               1e-8, true));
  }
  rep.check_margins("reproducing_property", rows, 0.0, "f(z) = <f, K_z> and <k_z, k_z> = 1");
}

void verify_unitary(DiagnosticReport& rep, const RunConfig& cfg, const std::vector<cdouble>& grid) {
  const FockParam alpha(cfg.alpha);
  const int n = cfg.order, half = n / 2;
  std::vector<std::size_t> rows;
  for (cdouble a : grid) {
    if (cfg.alpha * std::norm(a) > 0.25 * n) {
      rows.push_back(rep.add_untrusted("involution_error", a));
      rows.push_back(rep.add_untrusted("self_adjoint_error", a));
      continue;
    }
    const Eigen::MatrixXcd u = translation_unitary(a, alpha, n).matrix();
    // 1 - ||U e_n||^2 is only resolved to about 1e-14, so it is floored there.
    const Eigen::VectorXd miss =
        ((1.0 - u.colwise().squaredNorm().array()).max(0.0) + 1e-14).sqrt().matrix().transpose();
    const Eigen::MatrixXcd sq = u * u - Eigen::MatrixXcd::Identity(n + 1, n + 1);
    // |(U^2 - I)_{mn}| <= sqrt(miss_m miss_n): the only loss is mass beyond e_N.
    double worst = -std::numeric_limits<double>::infinity();
    for (int m = 0; m <= half; ++m) {
      for (int k = 0; k <= half; ++k) worst = std::max(worst, std::abs(sq(m, k)) - miss(m) * miss(k));
    }
    rows.push_back(rep.add_row("involution_error", a, std::nullopt, worst, 1e-10, true));
    rows.push_back(rep.add_row("self_adjoint_error", a, std::nullopt, (u - u.adjoint()).cwiseAbs().maxCoeff(), 1e-12,
                               true));
  }
  rep.check_margins("unitarity", rows, 0.0, "U_a^2 = I on the half block up to leaked mass, U_a = U_a*");
}

void verify_covariance(DiagnosticReport& rep, const RunConfig& cfg, const SymbolSpec& psi,
                       const std::vector<cdouble>& grid, const QuadratureScheme& scheme) {
  const FockParam alpha(cfg.alpha);
  const int n = cfg.order;
  const OperatorMatrix t = toeplitz(psi, alpha, n, scheme);
  std::vector<std::size_t> cov, ber;
  for (cdouble z : grid) {
    if (cfg.alpha * std::norm(z) > 0.25 * n) {
      cov.push_back(rep.add_untrusted("toeplitz_covariance_error", z));
    } else {
      const OperatorMatrix lhs = conjugate(t, z);
      const OperatorMatrix rhs = toeplitz(psi.composed_with_involution(z), alpha, n, scheme);
      cov.push_back(rep.add_row("toeplitz_covariance_error", z, std::nullopt, max_abs_diff(lhs, rhs, n / 2), 1e-6,
                                true));
    }
    if (cfg.alpha * std::norm(z) > 0.5 * n) {
      ber.push_back(rep.add_untrusted("berezin_vs_heat_error", z));
      continue;
    }
    const HeatTransform h = heat_transform(psi, z, alpha, scheme);
    ber.push_back(rep.add_row("berezin_vs_heat_error", z, std::nullopt, std::abs(berezin(t, z) - h.value), 1e-8, true));
    if (h.closed_form) {
      ber.push_back(rep.add_row("heat_closed_form_error", z, std::nullopt, std::abs(*h.closed_form - h.value), 1e-8,
                                true));
    }
  }
  rep.check_margins("covariance", cov, 0.0, "U_z T_psi U_z = T_{psi o phi_z} on the half block");
  rep.check_margins("berezin_vs_heat", ber, 0.0, "<T_psi k_z, k_z> = B_alpha psi(z)");
}

}  // namespace

void RunConfig::validate() const {
  if (!(alpha > 0.0) || !std::isfinite(alpha)) throw ConfigError("--alpha must be a positive finite number");
  if (order < 1 || order > 4000) throw ConfigError("--order must lie in [1, 4000]");
  if (!(p > 0.0) || !std::isfinite(p)) throw ConfigError("--p must be a positive finite number");
  if (p_prime && (!(*p_prime > 0.0) || !std::isfinite(*p_prime))) throw ConfigError("--p-prime must be positive");
  if (radial_nodes < 1 || angular_nodes < 1) throw ConfigError("node counts must be positive");
  if (!grid.empty() && grid != "square" && grid != "circle" && grid != "points") {
    throw ConfigError("--grid must be square, circle or points");
  }
  if (!(grid_radius >= 0.0) || !std::isfinite(grid_radius)) throw ConfigError("--grid-radius must be non-negative");
  if (grid_points < 1) throw ConfigError("--grid-points must be positive");
  if (angles < 1) throw ConfigError("--angles must be positive");
  if (!(sigma > 0.0) || !std::isfinite(sigma)) throw ConfigError("--sigma must be positive");
  if (!points.empty()) parse_points(points);
  if (grid == "points" && points.empty()) throw ConfigError("--grid points needs --points");
  for (double r : radius_list()) {
    if (!(r >= 0.0)) throw ConfigError("--radii must be non-negative");
  }
  for (double q : p_values()) {
    if (!(q > 0.0)) throw ConfigError("--p-list entries must be positive");
  }
  n_values();
  parse_symbol(symbol);
  for (const auto& f : factors) parse_symbol(f);
  if (fixture != "symbol") find_fixture(fixture, FockParam(alpha));
  if (out.empty()) throw ConfigError("--out must not be empty");
}

json RunConfig::to_json() const {
  json j;
  j["command"] = command;
  j["alpha"] = alpha;
  j["N"] = order;
  j["p"] = p;
  j["p_prime"] = p_prime ? json(*p_prime) : json(nullptr);
  j["radial_nodes"] = radial_nodes;
  j["angular_nodes"] = angular_nodes;
  j["fixture"] = fixture;
  j["symbol"] = symbol;
  j["factors"] = factors;
  j["grid"] = grid;
  j["grid_radius"] = grid_radius;
  j["grid_points"] = grid_points;
  j["points"] = points;
  j["angles"] = angles;
  j["radii"] = radii;
  j["p_list"] = p_list;
  j["sigma"] = sigma;
  j["n_list"] = n_list;
  j["out"] = out;
  j["seed"] = seed;
  return j;
}

LabSettings RunConfig::settings() const {
  LabSettings s;
  s.alpha = FockParam(alpha);
  s.order = order;
  s.angles = angles;
  return s;
}

QuadratureScheme RunConfig::scheme() const { return QuadratureScheme(FockParam(alpha), radial_nodes, angular_nodes); }

std::vector<double> RunConfig::radius_list() const {
  if (radii.empty()) return decay_radii(settings());
  return parse_doubles(radii, "--radii");
}

std::vector<double> RunConfig::p_values() const { return parse_doubles(p_list, "--p-list"); }

std::vector<int> RunConfig::n_values() const {
  std::vector<int> out;
  for (double v : parse_doubles(n_list, "--n-list")) {
    if (v != std::floor(v) || std::abs(v) > 1e6) throw ConfigError("--n-list entries must be integers");
    out.push_back(static_cast<int>(v));
  }
  return out;
}

double RunConfig::effective_p_prime() const {
  if (p_prime) return *p_prime;
  return p > 2.5 ? 2.5 : 0.5 * (2.0 + p);
}

std::vector<cdouble> RunConfig::grid_for(const std::string& fallback) const {
  const std::string kind = !grid.empty() ? grid : !points.empty() ? "points" : fallback;
  if (kind == "points") {
    if (points.empty()) throw ConfigError("--grid points needs --points");
    return parse_points(points);
  }
  if (kind == "square") return square_grid(grid_radius, grid_points);
  if (kind == "circle") {
    if (!radii.empty()) return circle_grid(radius_list(), angles);
    return circle_grid({grid_radius}, angles, false);
  }
  throw ConfigError("unknown grid '" + kind + "'");
}

void write_report_files(const DiagnosticReport& r, const RunConfig& cfg, std::ostream& log) {
  namespace fs = std::filesystem;
  std::error_code ec;
  fs::create_directories(cfg.out, ec);
  if (ec) throw ConfigError("cannot create output directory " + cfg.out + ": " + ec.message());
  const json config = cfg.to_json();
  for (const char* ext : {".json", ".csv"}) {
    const fs::path path = fs::path(cfg.out) / (r.experiment + ext);
    std::ofstream os(path, std::ios::binary);
    if (!os) throw ConfigError("cannot write " + path.string());
    if (std::string(ext) == ".json") {
      write_json(os, r, config);
    } else {
      write_csv(os, r, config);
    }
    log << "wrote " << path.string() << '\n';
  }
}

int cmd_verify(const RunConfig& cfg, std::ostream& log) {
  const QuadratureScheme scheme = cfg.scheme();
  const SymbolSpec psi = parse_symbol(cfg.symbol);
  const auto grid = cfg.grid.empty() && cfg.points.empty() ? std::vector<cdouble>{1.0, {0.0, 1.0}, {1.0, 1.0}}
                                                          : cfg.grid_for("points");
  DiagnosticReport rep;
  rep.experiment = "verify";
  rep.operator_description = "toeplitz " + psi.description();
  rep.parameters["alpha"] = cfg.alpha;
  rep.parameters["N"] = cfg.order;
  rep.parameters["grid_points"] = grid.size();
  verify_quadrature(rep, cfg, scheme);
  verify_kernels(rep, cfg, grid);
  verify_unitary(rep, cfg, grid);
  verify_covariance(rep, cfg, psi, grid, scheme);
  return finish(rep, cfg, log);
}

int cmd_bound(const RunConfig& cfg, std::ostream& log) {
  const QuadratureScheme scheme = cfg.scheme();
  const LabSettings s = cfg.settings();
  const LabOperator op = lab_operator(find_fixture(cfg.fixture, s.alpha), s, scheme);
  const DiagnosticReport rep = theorem_a_certificate(op, cfg.p, cfg.radius_list(), s, scheme);
  return finish(rep, cfg, log);
}

int cmd_berezin(const RunConfig& cfg, std::ostream& log) {
  const QuadratureScheme scheme = cfg.scheme();
  const FockParam alpha(cfg.alpha);
  const SymbolSpec psi = parse_symbol(cfg.symbol);
  const auto grid = cfg.grid_for("square");
  DiagnosticReport rep;
  rep.experiment = "heat_transform";
  rep.operator_description = psi.description();
  rep.parameters["alpha"] = cfg.alpha;
  rep.parameters["grid_points"] = grid.size();
  std::vector<std::size_t> dev, vals;
  for (cdouble z : grid) {
    const HeatTransform h = heat_transform(psi, z, alpha, scheme);
    vals.push_back(rep.add_row("heat_transform_re", z, std::nullopt, h.value.real(), kNaN, true));
    vals.push_back(rep.add_row("heat_transform_im", z, std::nullopt, h.value.imag(), kNaN, true));
    if (h.closed_form) {
      dev.push_back(rep.add_row("closed_form_error", z, std::nullopt, std::abs(*h.closed_form - h.value), 1e-8, true));
    }
  }
  bool finite = true;
  for (std::size_t i : vals) finite = finite && std::isfinite(rep.rows[i].quantity);
  rep.add_check("finite", finite ? Verdict::pass : Verdict::fail, vals, "every transform value is finite");
  if (!dev.empty()) rep.check_margins("closed_form_agreement", dev, 0.0, "quadrature against the closed form");
  return finish(rep, cfg, log);
}

int cmd_compactness(const RunConfig& cfg, std::ostream& log) {
  const QuadratureScheme scheme = cfg.scheme();
  const LabSettings s = cfg.settings();
  const Fixture fx = find_fixture(cfg.fixture, s.alpha);
  const LabOperator op = lab_operator(fx, s, scheme);
  const auto radii = cfg.radius_list();
  int code = kExitPass;
  const DiagnosticReport b = theorem_b_diagnostic(op, cfg.p, radii, s, scheme);
  code = std::max(code, finish(b, cfg, log));
  const DiagnosticReport l = lemma8_decay_comparison(op, cfg.p, cfg.effective_p_prime(), radii, s, scheme);
  code = std::max(code, finish(l, cfg, log));
  try {
    const DiagnosticReport c = theorem_c_report(op, cfg.p, radii, s, scheme, fx.truth);
    code = std::max(code, finish(c, cfg, log));
    for (const auto& note : c.notes) log << note << '\n';
  } catch (const HypothesisUnverifiedError& e) {
    log << "refused: " << e.what() << '\n';
    code = kExitFailed;
  }
  return code;
}

int cmd_demo_noncompact(const RunConfig& cfg, std::ostream& log) {
  return finish(noncompact_heat_demo(cfg.sigma, cfg.n_values(), cfg.scheme()), cfg, log);
}

int cmd_lemma2(const RunConfig& cfg, std::ostream& log) {
  const QuadratureScheme scheme = cfg.scheme();
  const LabSettings s = cfg.settings();
  const LabOperator op = lab_operator(find_fixture(cfg.fixture, s.alpha), s, scheme);
  return finish(lemma2_check(op, cfg.p, cfg.grid_for("square"), s, scheme), cfg, log);
}

int cmd_prop6(const RunConfig& cfg, std::ostream& log) {
  const QuadratureScheme scheme = cfg.scheme();
  const LabSettings s = cfg.settings();
  const LabOperator op = lab_operator(find_fixture(cfg.fixture, s.alpha), s, scheme);
  return finish(prop6_check(op, cfg.p, cfg.radius_list(), s, scheme), cfg, log);
}

int cmd_envelope(const RunConfig& cfg, std::ostream& log) {
  const QuadratureScheme scheme = cfg.scheme();
  const LabSettings s = cfg.settings();
  const auto z_list = cfg.points.empty() ? std::vector<cdouble>{0.0, 1.0, {0.0, 2.0}} : parse_points(cfg.points);
  const auto w_grid = circle_grid(cfg.radius_list(), s.angles);
  if (cfg.factors.size() > 1) {
    std::vector<SymbolSpec> symbols;
    for (const auto& f : cfg.factors) symbols.push_back(parse_symbol(f));
    return finish(product_envelope_check(symbols, z_list, w_grid, s, scheme), cfg, log);
  }
  const SymbolSpec psi = parse_symbol(cfg.factors.empty() ? cfg.symbol : cfg.factors.front());
  return finish(toeplitz_envelope_check(psi, z_list, w_grid, s, scheme), cfg, log);
}

int cmd_audit(const RunConfig& cfg, std::ostream& log) {
  const auto z_list = cfg.grid_for("square");
  return finish(pointwise_estimate_audit(cfg.p_values(), z_list, cfg.settings(), cfg.scheme()), cfg, log);
}

int cmd_matrix_export(const RunConfig& cfg, std::ostream& log) {
  namespace fs = std::filesystem;
  const QuadratureScheme scheme = cfg.scheme();
  const FockParam alpha(cfg.alpha);
  std::string name;
  OperatorMatrix m = OperatorMatrix::zero(alpha, cfg.order);
  if (cfg.fixture == "symbol") {
    m = toeplitz(parse_symbol(cfg.symbol), alpha, cfg.order, scheme);
    name = "toeplitz";
  } else {
    const Fixture fx = find_fixture(cfg.fixture, alpha);
    m = fx.build(alpha, cfg.order, scheme);
    name = fx.name;
  }
  std::error_code ec;
  fs::create_directories(cfg.out, ec);
  if (ec) throw ConfigError("cannot create output directory " + cfg.out + ": " + ec.message());
  const fs::path path = fs::path(cfg.out) / (name + ".fock-matrix");
  std::ofstream os(path, std::ios::binary);
  if (!os) throw ConfigError("cannot write " + path.string());
  write_matrix(os, m);
  log << "wrote " << path.string() << '\n';
  return kExitPass;
}

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{std::string(kToolName) + " " + kToolVersion +
               ": numerical lab for operators on the Fock space F^2_alpha"};
  app.set_version_flag("--version", std::string(kToolVersion));
  app.require_subcommand(1);
  app.fallthrough();
  app.set_config("--config", "", "TOML or INI file with the options below; flags override it");
  app.footer(
      "Every command writes <out>/<experiment>.json and <out>/<experiment>.csv.\n"
      "CSV columns: series,re_z,im_z,re_w,im_w,quantity,bound,margin,trusted\n"
      "  (margin = bound - quantity; re_w/im_w empty when no second point; numbers as %.17g;\n"
      "   leading '#' lines carry the tool version and the config).\n"
      "Exit codes: 0 pass, 1 failed or untrusted check, 2 usage/config error, 3 numerical failure.");

  RunConfig cfg;
  double p_prime = 0.0;
  app.add_option("--alpha", cfg.alpha, "Fock parameter alpha > 0")->capture_default_str();
  app.add_option("--order,-N", cfg.order, "truncation order N (basis e_0..e_N)")->capture_default_str();
  app.add_option("--p", cfg.p, "exponent p")->capture_default_str();
  auto* pp = app.add_option("--p-prime", p_prime, "second exponent 2 < p' < p (default min(2.5, (2+p)/2))");
  app.add_option("--radial-nodes", cfg.radial_nodes, "Gauss-Laguerre nodes in alpha r^2")->capture_default_str();
  app.add_option("--angular-nodes", cfg.angular_nodes, "uniform angular nodes")->capture_default_str();
  app.add_option("--fixture", cfg.fixture, "operator fixture (matrix export also takes 'symbol')")->capture_default_str();
  app.add_option("--symbol", cfg.symbol,
                 "symbol: one | const:c=,ci= | disk:R=,cx=,cy= | gaussian:t=,cx=,cy= | halfplane:theta=,d= | "
                 "step:r=a;b,v=x;y;z")
      ->capture_default_str();
  app.add_option("--factor", cfg.factors, "symbol factor of a Toeplitz product (repeatable)");
  app.add_option("--grid", cfg.grid, "square | circle | points (default depends on the command)");
  app.add_option("--grid-radius", cfg.grid_radius, "half width of the square grid, radius of the circle")
      ->capture_default_str();
  app.add_option("--grid-points", cfg.grid_points, "points per side of the square grid")->capture_default_str();
  app.add_option("--points", cfg.points, "explicit points x,y;x,y;...");
  app.add_option("--angles", cfg.angles, "angles per ring")->capture_default_str();
  app.add_option("--radii", cfg.radii, "radii r1,r2,... (default 1, 1.5, ... up to sqrt(N/(8 alpha)))");
  app.add_option("--p-list", cfg.p_list, "exponents for the pointwise audit")->capture_default_str();
  app.add_option("--sigma", cfg.sigma, "heat parameter of the translation demo")->capture_default_str();
  app.add_option("--n-list", cfg.n_list, "translations of the demo")->capture_default_str();
  app.add_option("--out", cfg.out, "output directory")->capture_default_str();
  app.add_option("--seed", cfg.seed, "seed of the random test function in verify")->capture_default_str();

  struct Command {
    const char* name;
    const char* help;
    int (*run)(const RunConfig&, std::ostream&);
  };
  const Command commands[] = {
      {"verify", "invariant suite: quadrature, reproducing kernel, unitarity, covariance, Berezin vs heat",
       cmd_verify},
      {"bound", "norm bound ||S|| <= 2pC/(p-2) from C = max ||S_z 1||_p", cmd_bound},
      {"berezin", "heat transform B_alpha psi on a grid", cmd_berezin},
      {"compactness", "Berezin compactness verdict with decay diagnostics", cmd_compactness},
      {"demo-noncompact", "translation-invariant norms of B_sigma on disk indicators", cmd_demo_noncompact},
      {"lemma2", "kernel pairing envelope over a grid of pairs", cmd_lemma2},
      {"prop6", "Hilbert-Schmidt criterion from sup ||S k_z||_p and sup ||S* k_z||_p", cmd_prop6},
      {"envelope", "pointwise envelope of (T_psi)_z 1, or of a product with repeated --factor", cmd_envelope},
      {"audit", "pointwise estimate audit for L^p(d lambda_alpha) functions", cmd_audit},
  };
  int (*selected)(const RunConfig&, std::ostream&) = nullptr;
  for (const auto& c : commands) {
    auto* sub = app.add_subcommand(c.name, c.help);
    sub->callback([&selected, &cfg, c] {
      selected = c.run;
      cfg.command = c.name;
    });
  }
  auto* matrix = app.add_subcommand("matrix", "matrix utilities");
  matrix->require_subcommand(1);
  matrix->add_subcommand("export", "write a fixture (or --fixture symbol: T_psi) in the fock-matrix v1 format")
      ->callback([&selected, &cfg] {
        selected = cmd_matrix_export;
        cfg.command = "matrix export";
      });

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    app.exit(e, out, err);
    return kExitPass;
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kExitConfig;
  }
  if (pp->count() > 0) cfg.p_prime = p_prime;

  try {
    cfg.validate();
    return selected(cfg, out);
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const IncompatibleError& e) {
    err << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const InvalidSchemeError& e) {
    err << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const SymbolError& e) {
    err << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const HypothesisUnverifiedError& e) {
    err << "hypothesis not verified: " << e.what() << '\n';
    return kExitFailed;
  } catch (const TruncationError& e) {
    err << "untrusted region: " << e.what() << " (needs N >= " << e.required_order << ")\n";
    return kExitFailed;
  } catch (const std::exception& e) {
    err << "numerical failure: " << e.what() << '\n';
    return kExitNumerical;
  }
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  std::vector<const char*> argv;
  argv.reserve(args.size());
  for (const auto& a : args) argv.push_back(a.c_str());
  return run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
}

}  // namespace fock
