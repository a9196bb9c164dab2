#pragma once

#include "fock/quadrature.hpp"

#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace fock {

namespace sym {

struct Constant {};

// chi of the open disk |w - center| < radius
struct Disk {
  cdouble center;
  double radius;
};

// chi of { w : Re(e^{-i angle} w) > offset }
struct HalfPlane {
  double angle;
  double offset;
};

// e^{-t |w - center|^2}, t > 0
struct Gaussian {
  double t;
  cdouble center;
};

// (w - c)^a conj(w - c)^b with coefficient
struct Monomial {
  int a;
  int b;
  cdouble coef;
};

// sum of monomials in (w - center), times e^{-t |w - center|^2}
struct PolyGaussian {
  double t;
  cdouble center;
  std::vector<Monomial> monomials;
};

struct Custom {
  ComplexFn fn;
  double sup_norm;
  std::string label;
};

using Primitive = std::variant<Constant, Disk, HalfPlane, Gaussian, PolyGaussian, Custom>;

}  // namespace sym

/// A node of a quadrature rule adapted to one symbol against d lambda_alpha:
/// integral psi g d lambda_alpha ~ sum exp(log_weight) * value * g(z).
struct WeightedNode {
  cdouble z;
  double log_weight;
  cdouble value;
};

/**
 * Bounded symbol built as a finite sum of closed-form primitives.
 *
 * Each primitive has an integration rule that respects its discontinuities:
 * disks are integrated in polar coordinates about their centre, half-planes on
 * a rotated Cartesian box cut at the boundary line, and Gaussians on a
 * Laguerre rule for the completed-square measure.
 */
class SymbolSpec {
 public:
  struct Term {
    cdouble coef;
    sym::Primitive primitive;
  };

  static SymbolSpec constant(cdouble c);
  static SymbolSpec disk(double radius, cdouble center = 0.0);
  static SymbolSpec half_plane(double angle = 0.0, double offset = 0.0);
  static SymbolSpec gaussian(double t, cdouble center = 0.0);
  static SymbolSpec poly_gaussian(double t, std::vector<sym::Monomial> monomials, cdouble center = 0.0);
  // v[0] on |w| < r[0], v[i] on r[i-1] <= |w| < r[i], v.back() beyond.
  static SymbolSpec radial_step(std::vector<double> radii, std::vector<cdouble> values);
  // sup_norm is required and checked against every node value.
  static SymbolSpec custom(ComplexFn fn, double sup_norm, std::string label);

  const std::vector<Term>& terms() const { return terms_; }
  double sup_norm() const { return sup_; }
  const std::string& description() const { return description_; }

  // Replace the declared bound; must dominate |psi| at every node used.
  SymbolSpec with_sup_norm(double sup) const;

  cdouble evaluate(cdouble w) const;

  // psi o phi_z, w -> psi(z - w); closed for every primitive.
  SymbolSpec composed_with_involution(cdouble z) const;

  // True when every term is invariant under rotations about the origin.
  bool is_radial() const;

  // Rule integrating psi * g against d lambda_alpha, exact (up to the jump
  // handling) for polynomial g of total degree <= degree. Zero-valued nodes
  // are dropped.
  std::vector<WeightedNode> nodes(FockParam alpha, const QuadratureScheme& scheme, int degree) const;

  // Heat transform closed form, when every term has one.
  std::optional<cdouble> heat_closed_form(cdouble z, FockParam alpha) const;

  SymbolSpec& operator+=(const SymbolSpec& other);
  SymbolSpec& operator*=(cdouble s);

 private:
  SymbolSpec(std::vector<Term> terms, double sup, std::string description)
      : terms_(std::move(terms)), sup_(sup), description_(std::move(description)) {}

  std::vector<Term> terms_;
  double sup_;
  std::string description_;
};

SymbolSpec operator+(SymbolSpec a, const SymbolSpec& b);
SymbolSpec operator*(cdouble s, SymbolSpec v);

double primitive_sup(const sym::Primitive& p);
cdouble evaluate_primitive(const sym::Primitive& p, cdouble w);
sym::Primitive compose_primitive(const sym::Primitive& p, cdouble z);
std::vector<WeightedNode> primitive_nodes(const sym::Primitive& p, FockParam alpha,
                                          const QuadratureScheme& scheme, int degree);
std::string describe(const sym::Primitive& p);

/// Parse names like "one", "const:c=2", "disk:R=1,cx=0,cy=0", "gaussian:t=1",
/// "halfplane:theta=0,d=0", "step:r=1;2,v=1;0.5;0". Throws ConfigError.
SymbolSpec parse_symbol(const std::string& text);

}  // namespace fock
