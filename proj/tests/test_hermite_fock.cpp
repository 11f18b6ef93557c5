#include <doctest.h>

#include <cmath>
#include <random>
#include <sstream>

#include "support.hpp"
#include "tfconc/hermite_fock.hpp"

using namespace tfconc;
using tfconc::testing::random_unit_fock;

TEST_CASE("monomial basis values") {
  CHECK(std::abs(monomial_eval(0, {0.7, -2.0}) - Complex(1.0)) < 1e-15);
  CHECK(std::abs(monomial_eval(1, {1.0, 0.0}) - Complex(1.772453850905516)) < 1e-14);
  CHECK(std::abs(monomial_eval(5, {0.0, 0.0})) == 0.0);
  // i^2 (pi^2/2)^{1/2} at z = i
  CHECK(std::abs(monomial_eval(2, {0.0, 1.0}) - Complex(-kPi / std::sqrt(2.0))) < 1e-13);
}

TEST_CASE("monomials stay finite far beyond factorial overflow") {
  for (int k : {171, 500, 5000, 9999}) {
    // radius where |e_k| = e^{100}, with angle 0.3 so the phase is 0.3 k
    const double log_r = (100.0 - 0.5 * k * std::log(kPi) + 0.5 * std::lgamma(k + 1.0)) / k;
    const Complex v = monomial_eval(k, PhasePoint(std::polar(std::exp(log_r), 0.3)));
    REQUIRE(std::isfinite(v.real()));
    REQUIRE(std::isfinite(v.imag()));
    CHECK(std::log(std::abs(v)) == doctest::Approx(100.0).epsilon(1e-11));
    CHECK(std::abs(std::arg(v / std::polar(1.0, 0.3 * k))) < 1e-9);
  }
}

TEST_CASE("evaluation of simple functions") {
  const auto e0 = FockCoefficients::basis(0, 8);
  CHECK(std::abs(fock_eval(e0, {2.0, 3.0}) - Complex(1.0)) < 1e-15);

  std::mt19937_64 rng(11);
  const auto f = random_unit_fock(rng, 12);
  CHECK(std::abs(fock_eval(f, {0.0, 0.0}) - f[0]) < 1e-15);

  const auto coh = coherent_state({{1.0, 0.0}, 1.0}, 40);
  CHECK(fock_density(coh, {1.0, 0.0}) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("derivative matches a centered difference") {
  std::mt19937_64 rng(3);
  const auto f = random_unit_fock(rng, 10);
  const Complex z(0.4, -0.3), h(1e-6, 0.0);
  Complex value, derivative;
  f.eval_with_derivative(z, value, derivative);
  const Complex fd = (fock_eval(f, PhasePoint(z + h)) - fock_eval(f, PhasePoint(z - h))) / (2.0 * h);
  CHECK(std::abs(value - fock_eval(f, PhasePoint(z))) < 1e-13);
  CHECK(std::abs(derivative - fd) < 1e-7);
}

TEST_CASE("norms") {
  const auto e0 = FockCoefficients::basis(0, 4);
  CHECK(fock_norm(e0, 2.0) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(fock_norm(e0, 4.0) == doctest::Approx(0.84089641525371454).epsilon(1e-10));
  CHECK(fock_norm(e0.scaled(3.0), 2.0) == doctest::Approx(3.0).epsilon(1e-15));
  for (double p : {1.0, 2.0, 4.0}) {
    CHECK(std::pow(fock_norm(e0, p), p) == doctest::Approx(2.0 / p).epsilon(1e-9));
  }
}

TEST_CASE("Parseval: quadrature norm equals coefficient norm") {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 5; ++trial) {
    const auto f = random_unit_fock(rng, 10).scaled(1.0 + trial);
    FockNormOptions quad;
    // p = 2 through the generic quadrature path: p slightly off 2 converges to it
    const double exact = fock_norm(f, 2.0);
    CHECK(exact == doctest::Approx(f.norm()).epsilon(1e-15));
    CHECK(fock_norm(f, 2.0 + 1e-9, quad) == doctest::Approx(exact).epsilon(1e-7));
  }
}

TEST_CASE("coherent states") {
  const auto c0 = coherent_state({{0.0, 0.0}, 1.0}, 8);
  CHECK(std::abs(c0[0] - Complex(1.0)) < 1e-15);
  for (int k = 1; k < 8; ++k) CHECK(std::abs(c0[k]) < 1e-15);

  const auto c1 = coherent_state({{1.0, 0.0}, 1.0}, 40);
  // dropped Poisson(pi) tail beyond 40 terms is 4.4e-30
  CHECK(std::abs(c1.norm2() - 1.0) < 1e-12);
  CHECK(fock_density(c1, {1.0, 0.0}) == doctest::Approx(1.0).epsilon(1e-12));

  CHECK_THROWS_AS(coherent_state({{1.0, 0.0}, 1.0}, 5), Error);
  try {
    coherent_state({{2.0, 1.0}, 1.0}, 10);
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::BasisTooSmall);
  }
  CHECK(coherent_tail({1.0, 0.0}, 40) == doctest::Approx(4.4108711167798915e-30).epsilon(1e-8));
}

TEST_CASE("translation operator") {
  std::mt19937_64 rng(8);
  const auto f = random_unit_fock(rng, 12);
  std::uniform_real_distribution<double> coord(-2.0, 2.0);
  for (int i = 0; i < 50; ++i) {
    const PhasePoint z{coord(rng), coord(rng)}, z0{coord(rng), coord(rng)};
    const double lhs = std::norm(translate_eval(f, z0, z)) * std::exp(-kPi * z.norm2());
    const double rhs = fock_density(f, z - z0);
    CHECK(std::abs(lhs - rhs) <= 1e-10 * std::max(rhs, 1e-300) + 1e-300);
    CHECK(std::abs(translate_eval(f, {0.0, 0.0}, z) - fock_eval(f, z)) < 1e-14);
  }
  const auto e0 = FockCoefficients::basis(0, 1);
  const double u = std::norm(translate_eval(e0, {1.0, 0.0}, {1.0, 0.0})) * std::exp(-kPi);
  CHECK(u == doctest::Approx(1.0).epsilon(1e-13));
}

TEST_CASE("pointwise bound for unit-norm functions") {
  std::mt19937_64 rng(2024);
  std::uniform_real_distribution<double> radius(0.0, 4.0), angle(0.0, 2.0 * kPi);
  std::uniform_int_distribution<int> size(1, 32);
  double worst = 0.0;
  for (int i = 0; i < 200; ++i) {
    const auto f = random_unit_fock(rng, size(rng));
    for (int j = 0; j < 200; ++j) {
      const Complex z = std::polar(radius(rng), angle(rng));
      worst = std::max(worst, fock_density(f, PhasePoint(z)));
    }
  }
  CHECK(worst <= 1.0 + 1e-10);
}

TEST_CASE("density decays on large circles") {
  std::mt19937_64 rng(99);
  for (int trial = 0; trial < 10; ++trial) {
    const auto f = random_unit_fock(rng, 32);
    double at6 = 0.0, at8 = 0.0;
    for (int j = 0; j < 720; ++j) {
      const double a = 2.0 * kPi * j / 720;
      at6 = std::max(at6, fock_density(f, PhasePoint(std::polar(6.0, a))));
      at8 = std::max(at8, fock_density(f, PhasePoint(std::polar(8.0, a))));
    }
    CHECK(at6 < 1e-3);
    CHECK(at8 < 1e-6);
  }
}

TEST_CASE("coefficient files round trip") {
  const FockCoefficients f({{0.5, -0.25}, {0.0, 1.0}, {-0.125, 0.0}});
  std::stringstream io;
  write_fock_coefficients(io, f);
  const auto g = read_fock_coefficients(io);
  REQUIRE(g.basis_size() == 3);
  for (int k = 0; k < 3; ++k) CHECK(g[k] == f[k]);

  std::istringstream missing_header("0,1,0\n");
  CHECK_THROWS_AS(read_fock_coefficients(missing_header), Error);
  std::istringstream skipped_index("# fock-coeffs v1\n0,1,0\n2,1,0\n");
  CHECK_THROWS_AS(read_fock_coefficients(skipped_index), Error);
}

TEST_CASE("invalid coefficient vectors are rejected") {
  CHECK_THROWS_AS(FockCoefficients(std::vector<Complex>{}), Error);
  CHECK_THROWS_AS(FockCoefficients({Complex(std::nan(""), 0.0)}), Error);
  CHECK_THROWS_AS(FockCoefficients({Complex(0.0)}).normalized(), Error);
}
