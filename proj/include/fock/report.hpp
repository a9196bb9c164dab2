#pragma once

#include "fock/quadrature.hpp"

#include <json.hpp>

#include <cstddef>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace fock {

enum class Verdict { pass, fail, untrusted_region, skipped };

const char* to_string(Verdict v);

/// One measured quantity at a grid point (or a point pair), with the bound it
/// is compared to. margin = bound - quantity, so margin >= 0 means it holds.
/// Rows without a bound carry NaN there.
struct ReportRow {
  std::string series;
  cdouble z;
  std::optional<cdouble> w;
  double quantity;
  double bound;
  double margin;
  bool trusted;
};

struct ReportCheck {
  std::string name;
  Verdict verdict;
  std::vector<std::size_t> rows;
  std::string detail;
};

/// Structured record of one experiment. Every check lists the rows it used;
/// untrusted rows never enter a verdict.
struct DiagnosticReport {
  std::string experiment;
  std::string operator_description;
  nlohmann::ordered_json parameters = nlohmann::ordered_json::object();
  std::vector<ReportRow> rows;
  std::vector<ReportCheck> checks;
  std::map<std::string, double> tolerances;
  std::map<std::string, double> scalars;
  std::vector<std::string> notes;

  std::size_t add_row(std::string series, cdouble z, std::optional<cdouble> w, double quantity, double bound,
                      bool trusted);
  // Untrusted rows recorded without evaluation.
  std::size_t add_untrusted(std::string series, cdouble z, std::optional<cdouble> w = std::nullopt);

  ReportCheck& add_check(std::string name, Verdict verdict, std::vector<std::size_t> rows, std::string detail);

  // pass when every trusted row among `rows` has margin >= -tol; untrusted
  // when none is trusted.
  ReportCheck& check_margins(std::string name, const std::vector<std::size_t>& rows, double tol,
                             std::string detail);

  const ReportCheck* find_check(const std::string& name) const;
  // No failed check, and at least one check was decided on trusted data.
  bool passed() const;
};

/// Shortest round-trip numbers; non-finite values are written as null.
nlohmann::ordered_json to_json(const DiagnosticReport& r);

/// Leading '#' lines carry the tool version and the given config; then an
/// RFC 4180 table with columns
///   series,re_z,im_z,re_w,im_w,quantity,bound,margin,trusted
/// and numbers printed with %.17g (nan/inf spelled as such).
void write_csv(std::ostream& os, const DiagnosticReport& r, const nlohmann::ordered_json& config);

void write_json(std::ostream& os, const DiagnosticReport& r, const nlohmann::ordered_json& config);

// One line per check: "<experiment> <check>: <verdict> (<detail>)".
std::string summarize(const DiagnosticReport& r);

}  // namespace fock
