#include "fock/fixtures.hpp"

#include "fock/error.hpp"

#include <cstdio>

namespace fock {

namespace {

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%g", v);
  return buf;
}

Fixture toeplitz_fixture(std::string name, std::string family, SymbolSpec psi, GroundTruth truth) {
  Fixture f{std::move(name), std::move(family), "toeplitz " + psi.description(), truth, psi, {}};
  f.build = [psi](FockParam alpha, int order, const QuadratureScheme& scheme) {
    return toeplitz(psi, alpha, order, scheme);
  };
  return f;
}

Fixture rank_one_fixture(std::string name, cdouble a) {
  Fixture f{std::move(name), "rank-one",
            "rank-one k_a (x) k_a, a = " + num(a.real()) + (a.imag() < 0 ? "-" : "+") + num(std::abs(a.imag())) + "i",
            GroundTruth::compact, std::nullopt, {}};
  f.build = [a](FockParam alpha, int order, const QuadratureScheme&) {
    const FockVector ka = normalized_kernel_coeffs(a, alpha, order);
    return OperatorMatrix::rank_one(ka, ka);
  };
  return f;
}

}  // namespace

const char* to_string(GroundTruth t) {
  switch (t) {
    case GroundTruth::compact:
      return "compact";
    case GroundTruth::non_compact:
      return "non-compact";
    case GroundTruth::unbounded:
      return "unbounded";
  }
  return "unknown";
}

std::vector<Fixture> fixture_suite(FockParam alpha) {
  const double a = alpha.value();
  std::vector<Fixture> out;

  Fixture id{"identity", "identity", "identity", GroundTruth::non_compact, SymbolSpec::constant(1.0), {}};
  id.build = [](FockParam al, int order, const QuadratureScheme&) { return OperatorMatrix::identity(al, order); };
  out.push_back(id);

  // diagonal P(n+1, alpha R^2) -> 0
  for (double r : {0.5, 1.0, 2.0}) {
    out.push_back(toeplitz_fixture("disk-" + num(r), "disk", SymbolSpec::disk(r), GroundTruth::compact));
  }
  // diagonal (alpha/(alpha+t))^{n+1} -> 0
  for (double m : {0.5, 1.0, 2.0}) {
    out.push_back(toeplitz_fixture("gaussian-" + num(m) + "a", "gaussian", SymbolSpec::gaussian(m * a),
                                   GroundTruth::compact));
  }
  // Berezin transform tends to 1 along the positive axis
  out.push_back(toeplitz_fixture("halfplane", "halfplane", SymbolSpec::half_plane(0.0, 0.0), GroundTruth::non_compact));

  out.push_back(rank_one_fixture("rank-one-0", 0.0));
  out.push_back(rank_one_fixture("rank-one-a", {0.5, 0.5}));

  Fixture diag{"diag-growth", "diag-growth", "diag(n)", GroundTruth::unbounded, std::nullopt, {}};
  diag.build = [](FockParam al, int order, const QuadratureScheme&) {
    return OperatorMatrix::diagonal(al, Eigen::VectorXcd::LinSpaced(order + 1, 0.0, order));
  };
  out.push_back(diag);
  return out;
}

std::vector<std::string> fixture_names(FockParam alpha) {
  std::vector<std::string> names;
  for (const auto& f : fixture_suite(alpha)) names.push_back(f.name);
  return names;
}

Fixture find_fixture(const std::string& name, FockParam alpha) {
  std::string key = name;
  if (key == "disk") key = "disk-1";
  if (key == "gaussian") key = "gaussian-1a";
  if (key == "rank-one") key = "rank-one-0";
  for (auto& f : fixture_suite(alpha)) {
    if (f.name == key) return f;
  }
  std::string known;
  for (const auto& n : fixture_names(alpha)) known += (known.empty() ? "" : ", ") + n;
  throw ConfigError("unknown fixture '" + name + "' (known: " + known + ")");
}

}  // namespace fock
