#pragma once

#include "fock/theorem_lab.hpp"

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace fock {

/// Exit-code contract of the command line tool.
enum ExitCode : int { kExitPass = 0, kExitFailed = 1, kExitConfig = 2, kExitNumerical = 3 };

/// Everything a run depends on. Validated before any computation and echoed
/// into every output file.
struct RunConfig {
  std::string command;
  double alpha = 1.0;
  int order = 200;
  double p = 3.0;
  std::optional<double> p_prime;
  int radial_nodes = QuadratureScheme::kDefaultRadial;
  int angular_nodes = QuadratureScheme::kDefaultAngular;
  std::string fixture = "disk";
  std::string symbol = "disk:R=1";
  std::vector<std::string> factors;  // product envelope
  std::string grid;                  // square | circle | points; empty selects the command default
  double grid_radius = 1.5;
  int grid_points = 5;
  std::string points;  // "x,y;x,y;..."
  int angles = 16;
  std::string radii;   // "1,1.5,2"; empty selects 1, 1.5, ... up to the lab radius
  std::string p_list = "2.5,3,4,8";
  double sigma = 1.0;
  std::string n_list = "0,5,10,20";
  std::string out = ".";
  std::uint64_t seed = 1;

  /// Throws ConfigError.
  void validate() const;
  nlohmann::ordered_json to_json() const;

  LabSettings settings() const;
  QuadratureScheme scheme() const;
  std::vector<double> radius_list() const;
  std::vector<double> p_values() const;
  std::vector<int> n_values() const;
  double effective_p_prime() const;
  /// Grid for the command; `fallback` applies when --grid is not given.
  std::vector<cdouble> grid_for(const std::string& fallback) const;
};

/// <out>/<experiment>.json and .csv.
void write_report_files(const DiagnosticReport& r, const RunConfig& cfg, std::ostream& log);

int cmd_verify(const RunConfig& cfg, std::ostream& log);
int cmd_bound(const RunConfig& cfg, std::ostream& log);
int cmd_berezin(const RunConfig& cfg, std::ostream& log);
int cmd_compactness(const RunConfig& cfg, std::ostream& log);
int cmd_demo_noncompact(const RunConfig& cfg, std::ostream& log);
int cmd_lemma2(const RunConfig& cfg, std::ostream& log);
int cmd_prop6(const RunConfig& cfg, std::ostream& log);
int cmd_envelope(const RunConfig& cfg, std::ostream& log);
int cmd_audit(const RunConfig& cfg, std::ostream& log);
int cmd_matrix_export(const RunConfig& cfg, std::ostream& log);

/// Parses argv (argv[0] is the program name) and dispatches; never throws.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace fock
