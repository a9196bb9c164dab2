#include "fock/error.hpp"
#include "fock/fixtures.hpp"
#include "fock/operators.hpp"
#include "oracles.hpp"

#include <doctest.h>

#include <cmath>
#include <sstream>

using namespace fock;
using cd = std::complex<double>;

namespace {

const FockParam kOne(1.0);

const QuadratureScheme& scheme() {
  static const QuadratureScheme s(kOne);
  return s;
}

cd normalized_kernel(cd a, cd w, double alpha) { return std::exp(-alpha * std::norm(a) / 2.0 + alpha * w * std::conj(a)); }

double block_diff(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b, int k) {
  return (a.topLeftCorner(k + 1, k + 1) - b.topLeftCorner(k + 1, k + 1)).cwiseAbs().maxCoeff();
}

std::vector<SymbolSpec> symbol_library() {
  return {SymbolSpec::constant(1.0),
          SymbolSpec::disk(1.0),
          SymbolSpec::disk(0.75, {0.5, -0.25}),
          SymbolSpec::gaussian(1.0),
          SymbolSpec::gaussian(0.5, {-0.5, 0.5}),
          SymbolSpec::half_plane(),
          SymbolSpec::radial_step({0.5, 1.5}, {1.0, -0.5, 0.25})};
}

}  // namespace

TEST_CASE("translation_unitary: a = 0 is the parity operator") {
  const OperatorMatrix u = translation_unitary(0.0, kOne, 20);
  for (int m = 0; m <= 20; ++m) {
    for (int n = 0; n <= 20; ++n) CHECK(u(m, n) == cd(m == n ? (n % 2 ? -1.0 : 1.0) : 0.0));
  }
}

TEST_CASE("translation_unitary maps kernels to kernels: U_a K_w = conj(k_a(w)) K_{a-w}") {
  const int order = 64;
  for (auto [a, w] : {std::pair<cd, cd>{1.0, {0, 1}}, {{0.5, -1.0}, {-0.3, 0.7}}, {{-1.5, 0.5}, {1.0, 1.0}}}) {
    const FockVector lhs = translation_unitary(a, kOne, order).apply(kernel_coeffs(w, kOne, order));
    const FockVector rhs = std::conj(normalized_kernel(a, w, 1.0)) * kernel_coeffs(a - w, kOne, order);
    for (int n = 0; n <= order / 2; ++n) CHECK(std::abs(lhs[n] - rhs[n]) < 1e-11 * std::abs(rhs.norm()));
  }
}

TEST_CASE("translation_unitary matches independently computed entries") {
  for (const auto& e : oracle::unitary_entries_a1()) {
    const OperatorMatrix u = translation_unitary({2.0, 1.0}, kOne, 64);
    CHECK(std::abs(u(e.m, e.n) - e.value) < 1e-13);
  }
  const OperatorMatrix u = translation_unitary({-1.5, 0.75}, FockParam(0.5), 70);
  for (const auto& e : oracle::unitary_entries_a05()) CHECK(std::abs(u(e.m, e.n) - e.value) < 1e-13);
}

TEST_CASE("translation_unitary agrees with the binomial series at small order") {
  for (double alpha : {0.5, 1.0, 2.0}) {
    for (cd a : {cd(0.3, 0.4), cd(-1.0, 0.5), cd(0.0, -1.2)}) {
      const int order = 16;
      if (alpha * std::norm(a) > order / 4.0) continue;
      const OperatorMatrix u = translation_unitary(a, FockParam(alpha), order);
      for (int m = 0; m <= order; ++m) {
        for (int n = 0; n <= order; ++n) CHECK(std::abs(u(m, n) - oracle::unitary_entry_series(a, alpha, m, n)) < 1e-12);
      }
    }
  }
}

TEST_CASE("translation_unitary entries agree with quadrature of e_n(a - w) k_a(w)") {
  const cd a(0.6, -0.8);
  const OperatorMatrix u = translation_unitary(a, kOne, 12);
  for (int m : {0, 2, 5}) {
    for (int n : {0, 3, 4}) {
      auto en = [](int k, cd z) { return std::pow(z, k) / std::sqrt(std::tgamma(k + 1.0)); };
      const cd q = integrate_gaussian(
          [&](cd w) { return en(n, a - w) * normalized_kernel(a, w, 1.0) * std::conj(en(m, w)); }, kOne, scheme());
      CHECK(std::abs(u(m, n) - q) < 1e-13);
    }
  }
}

TEST_CASE("translation_unitary is self-adjoint and an involution on the half block") {
  SUBCASE("a = 1, N = 64") {
    const Eigen::MatrixXcd u = translation_unitary(1.0, kOne, 64).matrix();
    const Eigen::MatrixXcd id = Eigen::MatrixXcd::Identity(65, 65);
    CHECK(block_diff(u * u, id, 32) < 1e-6);
    CHECK((u - u.adjoint()).cwiseAbs().maxCoeff() < 1e-14);
  }
  SUBCASE("alpha|a|^2 <= N/8 over several alpha") {
    for (double alpha : {0.5, 1.0, 2.0}) {
      const int order = 64;
      const double r = std::sqrt(order / (8.0 * alpha));
      for (double th : {0.0, 1.0, 2.5}) {
        const Eigen::MatrixXcd u = translation_unitary(std::polar(r, th), FockParam(alpha), order).matrix();
        const Eigen::MatrixXcd sq = u * u - Eigen::MatrixXcd::Identity(order + 1, order + 1);
        // the only defect is column mass pushed beyond e_N: |(U^2 - I)_{mn}| <= sqrt(miss_m miss_n)
        // 1 - ||U e_n||^2 is resolved to about 1e-14 only
        const Eigen::VectorXd miss =
            ((1.0 - u.colwise().squaredNorm().array()).max(0.0) + 1e-14).sqrt().matrix().transpose();
        for (int m = 0; m <= order / 2; ++m) {
          for (int n = 0; n <= order / 2; ++n) CHECK(std::abs(sq(m, n)) <= miss(m) * miss(n) + 1e-12);
        }
        CHECK(block_diff(u * u, Eigen::MatrixXcd::Identity(order + 1, order + 1), order / 4) < 1e-6);
        CHECK((u - u.adjoint()).cwiseAbs().maxCoeff() < 1e-13);
      }
    }
  }
}

TEST_CASE("translation_unitary refuses points beyond alpha|a|^2 = N/4") {
  try {
    translation_unitary(3.0, kOne, 20);
    FAIL("expected TruncationError");
  } catch (const TruncationError& e) {
    CHECK(e.required_order >= 36);
  }
}

TEST_CASE("toeplitz oracles") {
  const int order = 40;
  SUBCASE("constant symbol gives the identity") {
    const OperatorMatrix t = toeplitz(SymbolSpec::constant(1.0), kOne, order, scheme());
    CHECK(max_abs_diff(t, OperatorMatrix::identity(kOne, order)) < 1e-14);
  }
  SUBCASE("disk diagonal is the regularized incomplete gamma function") {
    for (double alpha : {0.5, 1.0, 2.0}) {
      for (double radius : {0.5, 1.0, 2.0}) {
        const OperatorMatrix t = toeplitz(SymbolSpec::disk(radius), FockParam(alpha), order, scheme().with_alpha(FockParam(alpha)));
        for (int n = 0; n <= order; ++n) {
          CHECK(std::abs(t(n, n) - oracle::disk_diagonal(n, alpha, radius)) <= 1e-8);
          for (int m = 0; m < n; ++m) CHECK(std::abs(t(m, n)) < 1e-14);
        }
      }
    }
    CHECK(std::abs(toeplitz(SymbolSpec::disk(1.0), kOne, 4, scheme())(0, 0) - 0.6321205588285577) < 1e-14);
  }
  SUBCASE("gaussian diagonal is (alpha/(alpha+t))^{n+1}") {
    for (double t : {0.5, 1.0, 2.0}) {
      const OperatorMatrix g = toeplitz(SymbolSpec::gaussian(t), kOne, order, scheme());
      for (int n = 0; n <= order; ++n) CHECK(std::abs(g(n, n) - oracle::gaussian_diagonal(n, 1.0, t)) <= 1e-8);
    }
  }
  SUBCASE("the generic node route reproduces the closed-form diagonal") {
    const SymbolSpec d = SymbolSpec::custom([](cd w) { return std::exp(-std::norm(w)); }, 1.0, "gaussian-as-custom");
    const OperatorMatrix g = toeplitz(d, kOne, order, scheme());
    for (int n = 0; n <= order; ++n) CHECK(std::abs(g(n, n) - std::pow(0.5, n + 1)) < 1e-12);
  }
  SUBCASE("disk_diagonal") {
    const auto d = disk_diagonal(1.7, 30);
    for (int n = 0; n <= 30; ++n) CHECK(d[n] == doctest::Approx(boost::math::gamma_p(n + 1.0, 1.7)).epsilon(1e-12));
  }
}

TEST_CASE("toeplitz with real symbols is self-adjoint and contractive") {
  // every library symbol is real-valued
  for (const auto& psi : symbol_library()) {
    CAPTURE(psi.description());
    const OperatorMatrix t = toeplitz(psi, kOne, 48, scheme());
    CHECK((t.matrix() - t.matrix().adjoint()).cwiseAbs().maxCoeff() <= 1e-10);
    CHECK(operator_norm(t) <= psi.sup_norm() + 1e-8);
  }
}

TEST_CASE("conjugation") {
  const int order = 64;
  for (cd z : {cd(1, 0), cd(0, 1), cd(1, 1)}) {
    const Conjugation c = conjugate_with_leakage(OperatorMatrix::identity(kOne, order), z);
    CHECK(c.leakage_trusted < 1e-6);
    CHECK(c.leakage_full >= c.leakage_trusted);
    CHECK(block_diff(c.matrix.matrix(), Eigen::MatrixXcd::Identity(order + 1, order + 1), order / 2) < 1e-6);
  }
  SUBCASE("conjugating twice returns the operator on the quarter block") {
    const OperatorMatrix t = toeplitz(SymbolSpec::disk(1.0, {0.3, 0.0}), kOne, order, scheme());
    const OperatorMatrix back = conjugate(conjugate(t, {0.8, 0.4}), {0.8, 0.4});
    CHECK(max_abs_diff(back, t, order / 4) < 1e-6);
  }
}

TEST_CASE("toeplitz covariance: (T_psi)_z = T_{psi o phi_z} on the half block") {
  const int order = 64;
  for (const auto& psi : symbol_library()) {
    CAPTURE(psi.description());
    const OperatorMatrix t = toeplitz(psi, kOne, order, scheme());
    for (cd z : {cd(1, 0), cd(0, 1), cd(1, 1)}) {
      const OperatorMatrix rhs = toeplitz(psi.composed_with_involution(z), kOne, order, scheme());
      CHECK(max_abs_diff(conjugate(t, z), rhs, order / 2) <= 1e-6);
    }
  }
}

TEST_CASE("berezin covariance over the fixture suite") {
  const int order = 64;
  for (const auto& fx : fixture_suite(kOne)) {
    CAPTURE(fx.name);
    const OperatorMatrix s = fx.build(kOne, order, scheme());
    for (cd a : {cd(1, 0), cd(0, 1), cd(1, 1)}) {
      const OperatorMatrix sa = conjugate(s, a);
      for (cd w : {cd(0, 0), cd(0.5, -0.5), cd(-1, 0.25), cd(1.5, 1)}) {
        const cd lhs = berezin(sa, w);
        const cd rhs = berezin(s, a - w);
        CHECK(std::abs(lhs - rhs) <= 1e-6 * std::max(1.0, std::abs(rhs)));
      }
    }
  }
}

TEST_CASE("s_z_one") {
  const int order = 64;
  SUBCASE("identity gives the constant 1") {
    for (cd z : {cd(0, 0), cd(1, -1), cd(2, 1)}) {
      const FockVector v = s_z_one(OperatorMatrix::identity(kOne, order), z);
      CHECK(std::abs(v[0] - 1.0) < 1e-12);
      for (int n = 1; n <= order / 2; ++n) CHECK(std::abs(v[n]) < 1e-12);
    }
  }
  SUBCASE("toeplitz: the projection of psi o phi_z") {
    for (const auto& psi : symbol_library()) {
      const OperatorMatrix t = toeplitz(psi, kOne, order, scheme());
      for (cd z : {cd(1, 0), cd(-0.5, 1.5)}) {
        const FockVector v = s_z_one(t, z);
        const OperatorMatrix tz = toeplitz(psi.composed_with_involution(z), kOne, order, scheme());
        for (int n = 0; n <= order / 2; ++n) CHECK(std::abs(v[n] - tz(n, 0)) < 1e-8);
      }
    }
  }
  SUBCASE("disk at z = 0") {
    const FockVector v = s_z_one(toeplitz(SymbolSpec::disk(1.0), kOne, order, scheme()), 0.0);
    CHECK(std::abs(v[0] - (1.0 - std::exp(-1.0))) < 1e-14);
  }
}

TEST_CASE("s_z_one_p_norm") {
  const int order = 64;
  for (cd z : {cd(0, 0), cd(1, 1), cd(-2, 0.5)}) {
    for (double p : {2.5, 3.0, 3.5}) {
      CHECK(s_z_one_p_norm(OperatorMatrix::identity(kOne, order), z, p, scheme()) == doctest::Approx(1.0).epsilon(1e-10));
    }
  }
  // |(T_psi)_z 1(w)| <= e^{alpha|w|^2/4}, whose L^p norm is (4/(4-p))^{1/p}
  for (const auto& psi : {SymbolSpec::disk(1.0), SymbolSpec::half_plane(), SymbolSpec::gaussian(0.5, {1.0, 0.0})}) {
    const OperatorMatrix t = toeplitz(psi, kOne, order, scheme());
    for (cd z : {cd(0, 0), cd(1, 1), cd(0, -2)}) {
      for (double p : {2.5, 3.0, 3.5}) {
        const double v = s_z_one_p_norm(t, z, p, scheme());
        CHECK(std::isfinite(v));
        CHECK(v <= std::pow(4.0 / (4.0 - p), 1.0 / p));
      }
    }
  }
}

TEST_CASE("berezin transform") {
  const int order = 64;
  CHECK(std::abs(berezin(OperatorMatrix::identity(kOne, order), {1.0, 2.0}) - 1.0) < 1e-10);
  for (const auto& psi : symbol_library()) {
    CAPTURE(psi.description());
    const OperatorMatrix t = toeplitz(psi, kOne, order, scheme());
    for (cd z : {cd(0, 0), cd(1, 0), cd(0, -1.5), cd(1.4, 1.4), cd(-2, 0)}) {
      CHECK(std::abs(berezin(t, z) - heat_transform(psi, z, kOne, scheme()).value) <= 1e-6);
    }
  }
}

TEST_CASE("heat transform") {
  CHECK(std::abs(heat_transform(SymbolSpec::constant({2, 1}), {1, 1}, kOne, scheme()).value - cd(2, 1)) < 1e-13);
  const HeatTransform g = heat_transform(SymbolSpec::gaussian(1.0), 0.0, kOne, scheme());
  CHECK(std::abs(g.value - 0.5) < 1e-13);
  REQUIRE(g.closed_form);
  CHECK(std::abs(*g.closed_form - 0.5) < 1e-15);
  for (double alpha : {0.5, 1.0, 2.0}) {
    const HeatTransform d = heat_transform(SymbolSpec::disk(1.0), 0.0, FockParam(alpha), scheme());
    CHECK(std::abs(d.value - (1.0 - std::exp(-alpha))) < 1e-13);
  }
  SUBCASE("closed forms and the area form agree with the node rule") {
    for (const auto& psi : symbol_library()) {
      for (cd z : {cd(0.5, 0.5), cd(-1, 1.5)}) {
        const HeatTransform h = heat_transform(psi, z, kOne, scheme());
        if (h.closed_form) CHECK(std::abs(*h.closed_form - h.value) < 1e-10);
        CHECK(std::abs(heat_transform_area_form(psi, z, kOne, scheme()) - h.value) < 1e-8);
      }
    }
  }
}

TEST_CASE("kernel_pairing") {
  const int order = 64;
  for (cd z : {cd(1, 2), cd(-2, 0.5)}) {
    for (cd w : {cd(0.5, -1), cd(2, 2)}) {
      const KernelPairing k = kernel_pairing(OperatorMatrix::identity(kOne, order), w, z);
      CHECK(k.log_magnitude == doctest::Approx((z * std::conj(w)).real()).epsilon(1e-10));
      CHECK(std::abs(std::remainder(k.phase - (z * std::conj(w)).imag(), 2 * M_PI)) < 1e-10);
    }
  }
  const KernelPairing d = kernel_pairing(toeplitz(SymbolSpec::disk(1.0), kOne, order, scheme()), 0.0, 0.0);
  CHECK(std::exp(d.log_magnitude) == doctest::Approx(1.0 - std::exp(-1.0)).epsilon(1e-13));
}

TEST_CASE("norms") {
  const int order = 30;
  const OperatorMatrix id = OperatorMatrix::identity(kOne, order);
  CHECK(operator_norm(id) == doctest::Approx(1.0));
  CHECK(hs_norm(id) == doctest::Approx(std::sqrt(order + 1.0)));
  CHECK(operator_norm(toeplitz(SymbolSpec::disk(1.0), kOne, order, scheme())) ==
        doctest::Approx(1.0 - std::exp(-1.0)).epsilon(1e-12));
  const FockVector k0 = normalized_kernel_coeffs(0.0, kOne, order);
  const auto sv = singular_values(OperatorMatrix::rank_one(k0, k0));
  CHECK(sv.front() == doctest::Approx(1.0));
  for (std::size_t i = 1; i < sv.size(); ++i) CHECK(sv[i] < 1e-14);
  for (std::size_t i = 1; i < sv.size(); ++i) CHECK(sv[i] <= sv[i - 1]);
  CHECK(hs_norm(toeplitz(SymbolSpec::gaussian(1.0), kOne, order, scheme())) ==
        doctest::Approx(std::sqrt(oracle::gaussian_hs_squared(order))).epsilon(1e-12));
}

TEST_CASE("truncated integral operator") {
  const int order = 48;
  const OperatorMatrix id = OperatorMatrix::identity(kOne, order);
  CHECK(truncated_integral_operator(id, 0.0, scheme()).matrix().cwiseAbs().maxCoeff() == 0.0);
  for (double r : {0.5, 1.0, 2.0}) {
    CHECK(max_abs_diff(truncated_integral_operator(id, r, scheme()), toeplitz(SymbolSpec::disk(r), kOne, order, scheme())) <
          1e-14);
  }
  // compact S: ||S - T_r|| shrinks to the tail as r reaches the trusted radius.
  // For the gaussian symbol D_r is diagonal: 2^{-(n+1)} Q(n+1, r^2).
  const OperatorMatrix g = toeplitz(SymbolSpec::gaussian(1.0), kOne, order, scheme());
  const double r = std::sqrt(order / 2.0);
  for (double rr : {1.0, 2.5, r}) {
    double expected = 0.0;
    for (int n = 0; n <= order; ++n) expected = std::max(expected, std::pow(0.5, n + 1) * boost::math::gamma_q(n + 1.0, rr * rr));
    CHECK(operator_norm(g - truncated_integral_operator(g, rr, scheme())) == doctest::Approx(expected).epsilon(1e-8));
  }
  CHECK(operator_norm(g - truncated_integral_operator(g, r, scheme())) < 1e-6);
  const FockVector ka = normalized_kernel_coeffs({0.5, 0.5}, kOne, order);
  const OperatorMatrix rk = OperatorMatrix::rank_one(ka, ka);
  double prev = INFINITY;
  for (double rr : {1.0, 2.0, 3.0, 4.0, r}) {
    const double d = operator_norm(rk - truncated_integral_operator(rk, rr, scheme()));
    CHECK(d < prev);
    prev = d;
  }
  CHECK(prev < 1e-6);
  CHECK_THROWS_AS(truncated_integral_operator(g, 10.0, scheme()), TruncationError);
}

TEST_CASE("matrix action agrees with the integral representation on kernel combinations") {
  // (Sf)(z) = integral f(w) <S K_w, K_z> d lambda(w), with K_w truncated at N on both sides
  const int order = 30;
  const KernelCombo f = KernelCombo(kOne).add(1.0, {0.4, -0.2}).add({0.0, -0.5}, {-0.6, 0.3});
  const SymbolSpec psi = SymbolSpec::disk(0.9, {0.2, 0.1});
  std::vector<OperatorMatrix> ops = {toeplitz(psi, kOne, order, scheme()),
                                     toeplitz(SymbolSpec::half_plane(0.3), kOne, order, scheme()),
                                     OperatorMatrix::diagonal(kOne, Eigen::VectorXcd::LinSpaced(order + 1, 1.0, 2.0))};
  for (const auto& s : ops) {
    for (cd z : {cd(0, 0), cd(0.5, 0.5), cd(-1, 0.2)}) {
      const Eigen::VectorXcd kz = kernel_coeffs(z, kOne, order).coeffs();
      const Eigen::RowVectorXcd row = kz.adjoint() * s.matrix();  // w -> sum_n row_n conj(e_n(w))
      const cd integral = integrate_gaussian(
          [&](cd w) {
            cd acc = 0.0, en = 1.0;
            for (int n = 0; n <= order; ++n) {
              acc += row(n) * std::conj(en);
              en *= w / std::sqrt(n + 1.0);
            }
            return f.evaluate(w) * acc;
          },
          kOne, scheme());
      const cd direct = s.apply(f.project(order)).evaluate(z);
      CHECK(std::abs(integral - direct) <= 1e-6);
    }
  }
}

TEST_CASE("doubling N changes trusted-region Berezin values by less than the tail bound") {
  const SymbolSpec psi = SymbolSpec::disk(1.0, {0.5, 0.0});
  const OperatorMatrix a = toeplitz(psi, kOne, 40, scheme());
  const OperatorMatrix b = toeplitz(psi, kOne, 80, scheme());
  const TrustedRegion region(kOne, 40);
  for (cd z : {cd(1, 0), cd(0, 2), cd(-2.5, 2.5), cd(3, 1)}) {
    REQUIRE(region.contains(z));
    CHECK(std::abs(berezin(a, z) - berezin(b, z)) <= 2.0 * region.normalized_tail_bound(z) + 1e-12);
  }
}

TEST_CASE("matrix text format") {
  const OperatorMatrix t = toeplitz(SymbolSpec::half_plane(0.2, 0.1), FockParam(0.75), 6, scheme().with_alpha(FockParam(0.75)));
  std::stringstream ss;
  write_matrix(ss, t);
  std::string header;
  std::getline(ss, header);
  CHECK(header == "fock-matrix v1 alpha=0.75 N=6");
  ss.seekg(0);
  const OperatorMatrix back = read_matrix(ss);
  CHECK(back.alpha() == t.alpha());
  CHECK(max_abs_diff(back, t) == 0.0);
  std::stringstream bad("fock-matrix v2 alpha=1 N=2\n");
  CHECK_THROWS_AS(read_matrix(bad), ConfigError);
}

TEST_CASE("operator matrix algebra") {
  const OperatorMatrix a = toeplitz(SymbolSpec::disk(1.0, {0.2, 0.3}), kOne, 10, scheme());
  CHECK(max_abs_diff(a.adjoint().adjoint(), a) == 0.0);
  const FockVector f = normalized_kernel_coeffs({0.3, 0.1}, kOne, 10);
  const FockVector af = a.apply(f);
  for (int m = 0; m <= 10; ++m) {
    cd s = 0.0;
    for (int n = 0; n <= 10; ++n) s += a(m, n) * f[n];
    CHECK(std::abs(af[m] - s) < 1e-15);
  }
  CHECK_THROWS_AS(a * OperatorMatrix::identity(kOne, 11), IncompatibleError);
}
