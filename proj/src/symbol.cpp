#include "fock/symbol.hpp"

#include "fock/error.hpp"
#include "fock/gauss_rules.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <map>
#include <numbers>
#include <sstream>

namespace fock {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%g", v);
  return buf;
}

std::string fmt(cdouble v) { return fmt(v.real()) + (v.imag() < 0 ? "-" : "+") + fmt(std::abs(v.imag())) + "i"; }

cdouble ipow(cdouble u, int k) {
  cdouble r = 1.0;
  for (int i = 0; i < k; ++i) r *= u;
  return r;
}

cdouble poly_value(const sym::PolyGaussian& g, cdouble w) {
  const cdouble u = w - g.center;
  const cdouble ub = std::conj(u);
  cdouble s = 0.0;
  for (const auto& m : g.monomials) s += m.coef * ipow(u, m.a) * ipow(ub, m.b);
  return s;
}

int poly_degree(const sym::PolyGaussian& g) {
  int d = 0;
  for (const auto& m : g.monomials) d = std::max({d, m.a, m.b});
  return d;
}

// Polar Laguerre scheme for d lambda_{beta}, exact to the requested degree.
QuadratureScheme scheme_for(FockParam beta, const QuadratureScheme& base, int degree) {
  if (base.polynomial_exactness_degree() >= degree) return base.with_alpha(beta);
  const int radial = std::max(base.radial_count(), degree / 2 + 1);
  const int angular = std::max(base.angular_count(), degree + 1);
  return QuadratureScheme(beta, radial, angular);
}

void check_value(cdouble v, double sup, cdouble z, std::size_t index) {
  if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) {
    std::ostringstream os;
    os << "symbol is not finite at node " << index;
    throw EvaluationError(os.str(), z, index);
  }
  if (std::abs(v) > sup * (1.0 + 1e-12) + 1e-300) {
    std::ostringstream os;
    os << "declared sup-norm " << sup << " is below |psi| = " << std::abs(v) << " at node " << index;
    throw SymbolError(os.str());
  }
}

std::vector<WeightedNode> polar_nodes(FockParam beta, cdouble shift, double log_scale,
                                      const QuadratureScheme& base, int degree,
                                      const std::function<cdouble(cdouble)>& value, double sup) {
  const QuadratureScheme s = scheme_for(beta, base, degree);
  std::vector<WeightedNode> out;
  out.reserve(s.size());
  s.for_each_node([&](std::size_t index, cdouble u, double, double lw) {
    const cdouble z = u + shift;
    const cdouble v = value(z);
    check_value(v, sup, z, index);
    if (v != 0.0) out.push_back({z, lw + log_scale, v});
  });
  return out;
}

std::vector<WeightedNode> disk_nodes(const sym::Disk& d, FockParam alpha, const QuadratureScheme& base,
                                     int degree) {
  const double a = alpha.value();
  const double x = 2.0 * a * d.radius * std::abs(d.center);
  const int nr = std::max(base.radial_count() / 4,
                          degree + 1 + static_cast<int>(std::ceil(a * d.radius * d.radius + x)) + 16);
  const int na = std::max(base.angular_count() / 4,
                          degree + 1 + static_cast<int>(std::ceil(x + 6.0 * std::sqrt(x) + 16.0)));
  const GaussRule rho = gauss_legendre(nr, 0.0, d.radius);
  const double log_ang = std::log(2.0 * a / na);
  std::vector<WeightedNode> out;
  out.reserve(static_cast<std::size_t>(nr) * na);
  for (std::size_t j = 0; j < rho.size(); ++j) {
    const double r = rho.nodes[j];
    for (int k = 0; k < na; ++k) {
      const double th = 2.0 * std::numbers::pi * k / na;
      const cdouble z = d.center + std::polar(r, th);
      out.push_back({z, std::log(r) + rho.log_weights[j] + log_ang - a * std::norm(z), 1.0});
    }
  }
  return out;
}

std::vector<WeightedNode> half_plane_nodes(const sym::HalfPlane& h, FockParam alpha, int degree) {
  const double a = alpha.value();
  const double L = std::sqrt((degree + 8.0 * std::sqrt(degree + 1.0) + 40.0) / a);
  const double x0 = std::max(h.offset, -L);
  if (x0 >= L) return {};
  const int n = static_cast<int>(std::ceil(1.5 * degree + 8.0 * std::sqrt(degree + 1.0) + 64.0));
  const GaussRule gx = gauss_legendre(n, x0, L);
  const GaussRule gy = gauss_legendre(n, -L, L);
  const cdouble rot = std::polar(1.0, h.angle);
  const double log_norm = std::log(a / std::numbers::pi);
  std::vector<WeightedNode> out;
  out.reserve(gx.size() * gy.size());
  for (std::size_t i = 0; i < gx.size(); ++i) {
    for (std::size_t j = 0; j < gy.size(); ++j) {
      const double x = gx.nodes[i], y = gy.nodes[j];
      out.push_back({rot * cdouble(x, y),
                     log_norm + gx.log_weights[i] + gy.log_weights[j] - a * (x * x + y * y), 1.0});
    }
  }
  return out;
}

}  // namespace

double primitive_sup(const sym::Primitive& p) {
  return std::visit(overloaded{
                        [](const sym::PolyGaussian& g) {
                          double s = 0.0;
                          for (const auto& m : g.monomials) {
                            const int k = m.a + m.b;
                            const double peak =
                                k == 0 ? 1.0 : std::pow(k / (2.0 * g.t), 0.5 * k) * std::exp(-0.5 * k);
                            s += std::abs(m.coef) * peak;
                          }
                          return s;
                        },
                        [](const sym::Custom& c) { return c.sup_norm; },
                        [](const auto&) { return 1.0; },
                    },
                    p);
}

cdouble evaluate_primitive(const sym::Primitive& p, cdouble w) {
  return std::visit(
      overloaded{
          [](const sym::Constant&) { return cdouble(1.0); },
          [&](const sym::Disk& d) { return cdouble(std::abs(w - d.center) < d.radius ? 1.0 : 0.0); },
          [&](const sym::HalfPlane& h) {
            return cdouble((std::polar(1.0, -h.angle) * w).real() > h.offset ? 1.0 : 0.0);
          },
          [&](const sym::Gaussian& g) { return cdouble(std::exp(-g.t * std::norm(w - g.center))); },
          [&](const sym::PolyGaussian& g) { return poly_value(g, w) * std::exp(-g.t * std::norm(w - g.center)); },
          [&](const sym::Custom& c) { return c.fn(w); },
      },
      p);
}

sym::Primitive compose_primitive(const sym::Primitive& p, cdouble z) {
  return std::visit(
      overloaded{
          [](const sym::Constant& c) -> sym::Primitive { return c; },
          [&](const sym::Disk& d) -> sym::Primitive { return sym::Disk{z - d.center, d.radius}; },
          [&](const sym::HalfPlane& h) -> sym::Primitive {
            const double shift = (std::polar(1.0, -h.angle) * z).real();
            return sym::HalfPlane{h.angle + std::numbers::pi, h.offset - shift};
          },
          [&](const sym::Gaussian& g) -> sym::Primitive { return sym::Gaussian{g.t, z - g.center}; },
          [&](const sym::PolyGaussian& g) -> sym::Primitive {
            sym::PolyGaussian out{g.t, z - g.center, g.monomials};
            for (auto& m : out.monomials) {
              if ((m.a + m.b) % 2 != 0) m.coef = -m.coef;
            }
            return out;
          },
          [&](const sym::Custom& c) -> sym::Primitive {
            auto fn = c.fn;
            return sym::Custom{[fn, z](cdouble w) { return fn(z - w); }, c.sup_norm,
                               c.label + " o phi(" + fmt(z) + ")"};
          },
      },
      p);
}

std::vector<WeightedNode> primitive_nodes(const sym::Primitive& p, FockParam alpha,
                                          const QuadratureScheme& scheme, int degree) {
  return std::visit(
      overloaded{
          [&](const sym::Constant&) {
            return polar_nodes(alpha, 0.0, 0.0, scheme, degree, [](cdouble) { return cdouble(1.0); }, 1.0);
          },
          [&](const sym::Disk& d) { return disk_nodes(d, alpha, scheme, degree); },
          [&](const sym::HalfPlane& h) { return half_plane_nodes(h, alpha, degree); },
          [&](const sym::Gaussian& g) {
            // (alpha/pi) e^{-alpha|w|^2 - t|w-c|^2}
            //   = (alpha/(alpha+t)) e^{-alpha t|c|^2/(alpha+t)} d lambda_{alpha+t} about c t/(alpha+t)
            const double a = alpha.value();
            const double s = a + g.t;
            const double log_scale = std::log(a / s) - a * g.t * std::norm(g.center) / s;
            return polar_nodes(FockParam(s), g.center * (g.t / s), log_scale, scheme, degree,
                               [](cdouble) { return cdouble(1.0); }, 1.0);
          },
          [&](const sym::PolyGaussian& g) {
            const double a = alpha.value();
            const double s = a + g.t;
            const double log_scale = std::log(a / s) - a * g.t * std::norm(g.center) / s;
            const double sup = primitive_sup(g);
            auto value = [&](cdouble w) { return poly_value(g, w); };
            // check against the full symbol, the polynomial alone is unbounded
            auto nodes = polar_nodes(FockParam(s), g.center * (g.t / s), log_scale, scheme,
                                     degree + poly_degree(g), value, std::numeric_limits<double>::infinity());
            for (std::size_t i = 0; i < nodes.size(); ++i) {
              check_value(nodes[i].value * std::exp(-g.t * std::norm(nodes[i].z - g.center)), sup, nodes[i].z, i);
            }
            return nodes;
          },
          [&](const sym::Custom& c) {
            return polar_nodes(alpha, 0.0, 0.0, scheme, degree, c.fn, c.sup_norm);
          },
      },
      p);
}

std::string describe(const sym::Primitive& p) {
  return std::visit(
      overloaded{
          [](const sym::Constant&) { return std::string("1"); },
          [](const sym::Disk& d) { return "disk(center=" + fmt(d.center) + ",R=" + fmt(d.radius) + ")"; },
          [](const sym::HalfPlane& h) {
            return "halfplane(theta=" + fmt(h.angle) + ",d=" + fmt(h.offset) + ")";
          },
          [](const sym::Gaussian& g) { return "gaussian(t=" + fmt(g.t) + ",center=" + fmt(g.center) + ")"; },
          [](const sym::PolyGaussian& g) {
            std::string s = "polygaussian(t=" + fmt(g.t) + ",center=" + fmt(g.center) + ",[";
            for (std::size_t i = 0; i < g.monomials.size(); ++i) {
              const auto& m = g.monomials[i];
              s += (i ? ";" : "") + fmt(m.coef) + "*u^" + std::to_string(m.a) + "*ubar^" + std::to_string(m.b);
            }
            return s + "])";
          },
          [](const sym::Custom& c) { return c.label; },
      },
      p);
}

SymbolSpec SymbolSpec::constant(cdouble c) {
  return SymbolSpec({{c, sym::Constant{}}}, std::abs(c), "const(" + fmt(c) + ")");
}

SymbolSpec SymbolSpec::disk(double radius, cdouble center) {
  if (!(radius >= 0.0) || !std::isfinite(radius)) throw SymbolError("disk radius must be finite and >= 0");
  sym::Disk d{center, radius};
  return SymbolSpec({{1.0, d}}, 1.0, describe(d));
}

SymbolSpec SymbolSpec::half_plane(double angle, double offset) {
  if (!std::isfinite(angle) || !std::isfinite(offset)) throw SymbolError("half-plane parameters must be finite");
  sym::HalfPlane h{angle, offset};
  return SymbolSpec({{1.0, h}}, 1.0, describe(h));
}

SymbolSpec SymbolSpec::gaussian(double t, cdouble center) {
  if (!(t > 0.0) || !std::isfinite(t)) throw SymbolError("gaussian rate must be positive");
  sym::Gaussian g{t, center};
  return SymbolSpec({{1.0, g}}, 1.0, describe(g));
}

SymbolSpec SymbolSpec::poly_gaussian(double t, std::vector<sym::Monomial> monomials, cdouble center) {
  if (!(t > 0.0) || !std::isfinite(t)) throw SymbolError("gaussian rate must be positive");
  for (const auto& m : monomials) {
    if (m.a < 0 || m.b < 0) throw SymbolError("monomial exponents must be non-negative");
  }
  sym::PolyGaussian g{t, center, std::move(monomials)};
  const double sup = primitive_sup(g);
  return SymbolSpec({{1.0, g}}, sup, describe(g));
}

SymbolSpec SymbolSpec::radial_step(std::vector<double> radii, std::vector<cdouble> values) {
  if (values.size() != radii.size() + 1) throw SymbolError("radial step needs one more value than radii");
  for (std::size_t i = 0; i < radii.size(); ++i) {
    if (!(radii[i] > 0.0) || (i > 0 && !(radii[i] > radii[i - 1]))) {
      throw SymbolError("radial step radii must be positive and increasing");
    }
  }
  // v_k + sum_i (v_{i-1} - v_i) 1_{B(0, r_i)}
  std::vector<Term> terms;
  terms.push_back({values.back(), sym::Constant{}});
  for (std::size_t i = 0; i < radii.size(); ++i) terms.push_back({values[i] - values[i + 1], sym::Disk{0.0, radii[i]}});
  double sup = 0.0;
  std::string desc = "step(";
  for (std::size_t i = 0; i < values.size(); ++i) {
    sup = std::max(sup, std::abs(values[i]));
    desc += fmt(values[i]);
    if (i < radii.size()) desc += "|" + fmt(radii[i]) + "|";
  }
  return SymbolSpec(std::move(terms), sup, desc + ")");
}

SymbolSpec SymbolSpec::custom(ComplexFn fn, double sup_norm, std::string label) {
  if (!fn) throw SymbolError("custom symbol needs a function");
  if (!(sup_norm >= 0.0) || !std::isfinite(sup_norm)) {
    throw SymbolError("custom symbol '" + label + "' needs a declared finite sup-norm");
  }
  sym::Custom c{std::move(fn), sup_norm, label};
  return SymbolSpec({{1.0, c}}, sup_norm, label);
}

SymbolSpec SymbolSpec::with_sup_norm(double sup) const {
  if (!(sup >= 0.0) || !std::isfinite(sup)) throw SymbolError("sup-norm must be finite and >= 0");
  SymbolSpec out = *this;
  out.sup_ = sup;
  return out;
}

cdouble SymbolSpec::evaluate(cdouble w) const {
  cdouble s = 0.0;
  for (const auto& t : terms_) s += t.coef * evaluate_primitive(t.primitive, w);
  return s;
}

SymbolSpec SymbolSpec::composed_with_involution(cdouble z) const {
  std::vector<Term> terms;
  terms.reserve(terms_.size());
  for (const auto& t : terms_) terms.push_back({t.coef, compose_primitive(t.primitive, z)});
  return SymbolSpec(std::move(terms), sup_, description_ + " o phi(" + fmt(z) + ")");
}

bool SymbolSpec::is_radial() const {
  for (const auto& t : terms_) {
    const bool radial = std::visit(overloaded{
                                       [](const sym::Constant&) { return true; },
                                       [](const sym::Disk& d) { return d.center == 0.0; },
                                       [](const sym::Gaussian& g) { return g.center == 0.0; },
                                       [](const auto&) { return false; },
                                   },
                                   t.primitive);
    if (!radial) return false;
  }
  return true;
}

std::vector<WeightedNode> SymbolSpec::nodes(FockParam alpha, const QuadratureScheme& scheme, int degree) const {
  std::vector<WeightedNode> out;
  for (const auto& t : terms_) {
    if (t.coef == 0.0) continue;
    auto part = primitive_nodes(t.primitive, alpha, scheme, degree);
    for (auto& n : part) n.value *= t.coef;
    out.insert(out.end(), part.begin(), part.end());
  }
  // The declared bound is checked on the full symbol, not per term.
  std::size_t index = 0;
  for (const auto& n : out) check_value(evaluate(n.z), sup_, n.z, index++);
  return out;
}

std::optional<cdouble> SymbolSpec::heat_closed_form(cdouble z, FockParam alpha) const {
  const double a = alpha.value();
  cdouble total = 0.0;
  for (const auto& t : terms_) {
    const std::optional<cdouble> v = std::visit(
        overloaded{
            [](const sym::Constant&) -> std::optional<cdouble> { return 1.0; },
            [&](const sym::Gaussian& g) -> std::optional<cdouble> {
              // (alpha/(alpha+t)) e^{-alpha t|z-c|^2/(alpha+t)}
              return a / (a + g.t) * std::exp(-a * g.t * std::norm(z - g.center) / (a + g.t));
            },
            [&](const sym::Disk& d) -> std::optional<cdouble> {
              if (std::abs(z - d.center) > 1e-15) return std::nullopt;
              return -std::expm1(-a * d.radius * d.radius);
            },
            [&](const sym::HalfPlane& h) -> std::optional<cdouble> {
              // lambda{w : Re(e^{-i theta} w) < Re(e^{-i theta} z) - d}; the coordinate is N(0, 1/(2 alpha))
              const double s = (std::polar(1.0, -h.angle) * z).real() - h.offset;
              return 0.5 * std::erfc(-s * std::sqrt(a));
            },
            [](const auto&) -> std::optional<cdouble> { return std::nullopt; },
        },
        t.primitive);
    if (!v) return std::nullopt;
    total += t.coef * *v;
  }
  return total;
}

SymbolSpec& SymbolSpec::operator+=(const SymbolSpec& other) {
  terms_.insert(terms_.end(), other.terms_.begin(), other.terms_.end());
  sup_ += other.sup_;
  description_ = "(" + description_ + " + " + other.description_ + ")";
  return *this;
}

SymbolSpec& SymbolSpec::operator*=(cdouble s) {
  for (auto& t : terms_) t.coef *= s;
  sup_ *= std::abs(s);
  description_ = fmt(s) + "*" + description_;
  return *this;
}

SymbolSpec operator+(SymbolSpec a, const SymbolSpec& b) { return a += b; }
SymbolSpec operator*(cdouble s, SymbolSpec v) { return v *= s; }

namespace {

std::vector<double> parse_list(const std::string& s) {
  std::vector<double> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ';')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stod(item, &used));
      if (used != item.size()) throw ConfigError("bad number '" + item + "'");
    } catch (const std::logic_error&) {
      throw ConfigError("bad number '" + item + "'");
    }
  }
  return out;
}

}  // namespace

SymbolSpec parse_symbol(const std::string& text) {
  const auto colon = text.find(':');
  const std::string name = text.substr(0, colon);
  std::map<std::string, std::string> kv;
  if (colon != std::string::npos) {
    std::stringstream ss(text.substr(colon + 1));
    std::string item;
    while (std::getline(ss, item, ',')) {
      const auto eq = item.find('=');
      if (eq == std::string::npos) throw ConfigError("symbol parameter '" + item + "' needs key=value");
      kv[item.substr(0, eq)] = item.substr(eq + 1);
    }
  }
  auto take = [&](const std::string& key, double fallback) {
    auto it = kv.find(key);
    if (it == kv.end()) return fallback;
    const auto v = parse_list(it->second);
    kv.erase(it);
    if (v.size() != 1) throw ConfigError("symbol parameter '" + key + "' needs one number");
    return v.front();
  };
  auto done = [&](SymbolSpec s) {
    if (!kv.empty()) throw ConfigError("unknown symbol parameter '" + kv.begin()->first + "'");
    return s;
  };

  try {
    if (name == "one") return done(SymbolSpec::constant(1.0));
    if (name == "const") return done(SymbolSpec::constant({take("c", 1.0), take("ci", 0.0)}));
    if (name == "disk") {
      const double R = take("R", 1.0);
      return done(SymbolSpec::disk(R, {take("cx", 0.0), take("cy", 0.0)}));
    }
    if (name == "gaussian") {
      const double t = take("t", 1.0);
      return done(SymbolSpec::gaussian(t, {take("cx", 0.0), take("cy", 0.0)}));
    }
    if (name == "halfplane") {
      const double theta = take("theta", 0.0);
      return done(SymbolSpec::half_plane(theta, take("d", 0.0)));
    }
    if (name == "step") {
      auto r = kv.count("r") ? parse_list(kv["r"]) : std::vector<double>{};
      auto v = kv.count("v") ? parse_list(kv["v"]) : std::vector<double>{};
      kv.erase("r");
      kv.erase("v");
      std::vector<cdouble> values(v.begin(), v.end());
      return done(SymbolSpec::radial_step(r, values));
    }
  } catch (const SymbolError& e) {
    throw ConfigError(std::string("invalid symbol: ") + e.what());
  }
  throw ConfigError("unknown symbol '" + name + "' (one, const, disk, gaussian, halfplane, step)");
}

}  // namespace fock
