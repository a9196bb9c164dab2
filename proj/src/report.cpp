#include "fock/report.hpp"

#include "fock/version.hpp"

#include <cmath>
#include <cstdio>
#include <limits>
#include <ostream>
#include <sstream>

namespace fock {

namespace {

using json = nlohmann::ordered_json;

json number(double v) {
  if (!std::isfinite(v)) return nullptr;
  return v;
}

std::string g17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

// RFC 4180 quoting, only when needed.
std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n\r") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

}  // namespace

const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::pass:
      return "pass";
    case Verdict::fail:
      return "fail";
    case Verdict::untrusted_region:
      return "untrusted-region";
    case Verdict::skipped:
      return "skipped";
  }
  return "unknown";
}

std::size_t DiagnosticReport::add_row(std::string series, cdouble z, std::optional<cdouble> w, double quantity,
                                      double bound, bool trusted) {
  // equal infinities (e.g. both sides log 0) satisfy the bound with zero margin
  const double margin = quantity == bound ? 0.0 : bound - quantity;
  rows.push_back({std::move(series), z, w, quantity, bound, margin, trusted});
  return rows.size() - 1;
}

std::size_t DiagnosticReport::add_untrusted(std::string series, cdouble z, std::optional<cdouble> w) {
  const double nan = std::numeric_limits<double>::quiet_NaN();
  rows.push_back({std::move(series), z, w, nan, nan, nan, false});
  return rows.size() - 1;
}

ReportCheck& DiagnosticReport::add_check(std::string name, Verdict verdict, std::vector<std::size_t> used,
                                         std::string detail) {
  checks.push_back({std::move(name), verdict, std::move(used), std::move(detail)});
  return checks.back();
}

ReportCheck& DiagnosticReport::check_margins(std::string name, const std::vector<std::size_t>& used, double tol,
                                             std::string detail) {
  std::vector<std::size_t> trusted;
  double worst = std::numeric_limits<double>::infinity();
  for (std::size_t i : used) {
    if (!rows[i].trusted) continue;
    trusted.push_back(i);
    // NaN margins (failed evaluation) count as violations
    const double m = std::isnan(rows[i].margin) ? -std::numeric_limits<double>::infinity() : rows[i].margin;
    worst = std::min(worst, m);
  }
  if (trusted.empty()) {
    return add_check(std::move(name), Verdict::untrusted_region, {}, detail + "; no trusted rows");
  }
  std::ostringstream os;
  os << detail << "; worst margin " << g17(worst) << " over " << trusted.size() << " trusted rows (tol " << tol
     << ")";
  tolerances[name] = tol;
  return add_check(std::move(name), worst >= -tol ? Verdict::pass : Verdict::fail, std::move(trusted), os.str());
}

const ReportCheck* DiagnosticReport::find_check(const std::string& name) const {
  for (const auto& c : checks) {
    if (c.name == name) return &c;
  }
  return nullptr;
}

bool DiagnosticReport::passed() const {
  bool decided = false;
  for (const auto& c : checks) {
    if (c.verdict == Verdict::fail || c.verdict == Verdict::untrusted_region) return false;
    if (c.verdict == Verdict::pass) decided = true;
  }
  return decided;
}

json to_json(const DiagnosticReport& r) {
  json j;
  j["experiment"] = r.experiment;
  j["operator"] = r.operator_description;
  j["parameters"] = r.parameters;
  json tol = json::object();
  for (const auto& [k, v] : r.tolerances) tol[k] = number(v);
  j["tolerances"] = tol;
  json sc = json::object();
  for (const auto& [k, v] : r.scalars) sc[k] = number(v);
  j["scalars"] = sc;
  json checks = json::array();
  for (const auto& c : r.checks) {
    checks.push_back({{"name", c.name}, {"verdict", to_string(c.verdict)}, {"rows", c.rows}, {"detail", c.detail}});
  }
  j["checks"] = checks;
  json rows = json::array();
  for (const auto& row : r.rows) {
    json e;
    e["series"] = row.series;
    e["z"] = {number(row.z.real()), number(row.z.imag())};
    e["w"] = row.w ? json{number(row.w->real()), number(row.w->imag())} : json(nullptr);
    e["quantity"] = number(row.quantity);
    e["bound"] = number(row.bound);
    e["margin"] = number(row.margin);
    e["trusted"] = row.trusted;
    rows.push_back(std::move(e));
  }
  j["rows"] = rows;
  j["notes"] = r.notes;
  j["passed"] = r.passed();
  return j;
}

void write_json(std::ostream& os, const DiagnosticReport& r, const json& config) {
  json j;
  j["tool"] = kToolName;
  j["version"] = kToolVersion;
  j["config"] = config;
  j["report"] = to_json(r);
  os << j.dump(2) << '\n';
}

void write_csv(std::ostream& os, const DiagnosticReport& r, const json& config) {
  os << "# " << kToolName << ' ' << kToolVersion << '\n';
  os << "# experiment: " << r.experiment << '\n';
  os << "# config: " << config.dump() << '\n';
  os << "series,re_z,im_z,re_w,im_w,quantity,bound,margin,trusted\n";
  for (const auto& row : r.rows) {
    os << csv_field(row.series) << ',' << g17(row.z.real()) << ',' << g17(row.z.imag()) << ',';
    if (row.w) {
      os << g17(row.w->real()) << ',' << g17(row.w->imag());
    } else {
      os << ',';
    }
    os << ',' << g17(row.quantity) << ',' << g17(row.bound) << ',' << g17(row.margin) << ','
       << (row.trusted ? "true" : "false") << '\n';
  }
}

std::string summarize(const DiagnosticReport& r) {
  std::ostringstream os;
  for (const auto& c : r.checks) {
    os << r.experiment << ' ' << c.name << ": " << to_string(c.verdict);
    if (!c.detail.empty()) os << " (" << c.detail << ")";
    os << '\n';
  }
  return os.str();
}

}  // namespace fock
