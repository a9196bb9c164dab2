#pragma once

#include "fock/operators.hpp"

#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace fock {

// Compactness labels assigned from the closed form (diagonal decay or rank),
// never from a numerical proxy.
enum class GroundTruth { compact, non_compact, unbounded };

const char* to_string(GroundTruth t);

struct Fixture {
  std::string name;
  std::string family;  // identity, disk, gaussian, halfplane, rank-one, diag-growth
  std::string description;
  GroundTruth truth;
  std::optional<SymbolSpec> symbol;  // set for Toeplitz fixtures
  std::function<OperatorMatrix(FockParam, int order, const QuadratureScheme&)> build;

  bool bounded() const { return truth != GroundTruth::unbounded; }
};

/// identity; disks R = 0.5, 1, 2; Gaussians t = alpha/2, alpha, 2 alpha;
/// half-plane Re w > 0; rank-one k_a (x) k_a for a = 0 and a = (1+i)/2;
/// diag(n).
std::vector<Fixture> fixture_suite(FockParam alpha);

/// By name from the suite; "disk", "gaussian" and "rank-one" select the
/// R = 1, t = alpha and a = 0 members. Throws ConfigError.
Fixture find_fixture(const std::string& name, FockParam alpha);

std::vector<std::string> fixture_names(FockParam alpha);

}  // namespace fock
