#include <doctest.h>

#include <cmath>
#include <random>
#include <sstream>
#include <vector>

#include "support.hpp"
#include "tfconc/gabor.hpp"

using namespace tfconc;

namespace {

SampledSignal combine(const std::vector<std::pair<int, Complex>>& terms) {
  const Axis axis = default_signal_axis();
  std::vector<Complex> samples(axis.count, 0.0);
  for (const auto& [k, c] : terms) {
    const auto h = hermite_function(k, axis);
    for (int j = 0; j < axis.count; ++j) samples[j] += c * h[j];
  }
  return SampledSignal(std::move(samples), axis.origin, axis.step);
}

std::vector<SampledSignal> standard_signals() {
  return {gaussian_window(0.0, 0.0), gaussian_window(0.7, -1.2),
          combine({{0, {0.6, 0.0}}, {1, {0.0, 0.5}}, {3, {0.3, -0.55}}})};
}

}  // namespace

TEST_CASE("Gaussian window samples") {
  const auto phi = gaussian_window(0.0, 0.0);
  CHECK(phi.norm() == doctest::Approx(1.0).epsilon(1e-10));
  const int mid = (phi.size() - 1) / 2;
  REQUIRE(phi.x(mid) == 0.0);
  CHECK(std::abs(phi[mid] - Complex(1.1892071150027211)) < 1e-14);

  const auto shifted = gaussian_window(1.0, 0.0);
  for (int j = 0; j + 64 < phi.size(); ++j) CHECK(std::abs(shifted[j + 64] - phi[j]) < 1e-15);

  CHECK_THROWS_AS(gaussian_window(5.0, 0.0), Error);
}

TEST_CASE("Hermite functions are orthonormal on the default grid") {
  const Axis axis = default_signal_axis();
  std::vector<double> xs(axis.count);
  for (int j = 0; j < axis.count; ++j) xs[j] = axis.at(j);
  const auto h = hermite_functions(64, xs);
  double worst = 0.0;
  for (int a = 0; a < 64; ++a) {
    for (int b = a; b < 64; ++b) {
      double dot = 0.0;
      for (int j = 0; j < axis.count; ++j) dot += h[a][j] * h[b][j] * axis.step;
      worst = std::max(worst, std::abs(dot - (a == b ? 1.0 : 0.0)));
    }
  }
  CHECK(worst < 1e-12);
}

TEST_CASE("STFT of the Gaussian window") {
  const auto grid = stft(gaussian_window(0.0, 0.0));
  const int cx = (grid.x_axis.count - 1) / 2, cw = (grid.w_axis.count - 1) / 2;
  REQUIRE(grid.x_axis.at(cx) == 0.0);
  REQUIRE(grid.w_axis.at(cw) == 0.0);
  CHECK(std::abs(grid.value(cx, cw)) == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(grid.energy() == doctest::Approx(1.0).epsilon(1e-4));

  double worst = 0.0;
  for (int i = 0; i < grid.x_axis.count; i += 7) {
    for (int j = 0; j < grid.w_axis.count; j += 7) {
      const double x = grid.x_axis.at(i), w = grid.w_axis.at(j);
      worst = std::max(worst, std::abs(std::norm(grid.value(i, j)) - std::exp(-kPi * (x * x + w * w))));
    }
  }
  CHECK(worst < 1e-6);
}

TEST_CASE("STFT of the zero signal vanishes") {
  const Axis axis = default_signal_axis();
  const SampledSignal zero(std::vector<Complex>(axis.count, 0.0), axis.origin, axis.step);
  const auto grid = stft(zero);
  CHECK(grid.max_abs() == 0.0);
}

TEST_CASE("isometry and magnitude bound on the standard signals") {
  for (const auto& f : standard_signals()) {
    const auto grid = stft(f);
    CHECK(tfconc::testing::rel_diff(grid.energy(), f.norm2()) < 1e-4);
    CHECK(grid.max_abs() <= f.norm() * (1.0 + 1e-8));
  }
}

TEST_CASE("Hermite coefficients of simple signals") {
  const auto c0 = signal_to_fock(gaussian_window(0.0, 0.0), 16);
  CHECK(std::abs(c0[0] - Complex(1.0)) < 1e-8);
  for (int k = 1; k < 16; ++k) CHECK(std::abs(c0[k]) < 1e-8);

  const auto c1 = signal_to_fock(hermite_function(1), 16);
  for (int k = 0; k < 16; ++k) CHECK(std::abs(c1[k] - Complex(k == 1 ? 1.0 : 0.0)) < 1e-10);

  for (const auto& f : standard_signals()) {
    CHECK(signal_to_fock(f, 64).norm() <= f.norm() * (1.0 + 1e-6));
  }
  CHECK_THROWS_AS(signal_to_fock(hermite_function(10), 5), Error);
}

TEST_CASE("time-frequency shifts of the window map to coherent states") {
  // M_{w0} T_{x0} phi corresponds to the coherent state at x0 - i w0 up to a phase
  const double x0 = 0.8, w0 = -0.6;
  const auto c = signal_to_fock(gaussian_window(x0, w0), 48);
  const auto coh = coherent_state({{x0, -w0}, 1.0}, 48);
  const Complex phase = c[0] / coh[0];
  CHECK(std::abs(phase) == doctest::Approx(1.0).epsilon(1e-8));
  for (int k = 0; k < 48; ++k) CHECK(std::abs(c[k] - phase * coh[k]) < 1e-8);
}

TEST_CASE("Bargmann identity on sample points") {
  std::vector<PhasePoint> points;
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> coord(-2.5, 2.5);
  for (int i = 0; i < 40; ++i) points.push_back({coord(rng), coord(rng)});

  CHECK(bargmann_identity_check(gaussian_window(0.0, 0.0), 32, points) < 1e-6);
  for (const auto& f : standard_signals()) CHECK(bargmann_identity_check(f, 64, points) < 1e-5);
}

TEST_CASE("signal files") {
  const auto f = gaussian_window(0.0, 1.0);
  std::stringstream io;
  write_signal(io, f);
  const auto g = read_signal(io);
  REQUIRE(g.size() == f.size());
  CHECK(g.dx() == doctest::Approx(f.dx()).epsilon(1e-15));
  double worst = 0.0;
  for (int j = 0; j < f.size(); ++j) worst = std::max(worst, std::abs(g[j] - f[j]));
  CHECK(worst < 1e-15);

  std::istringstream uneven("# signal v1\n0,0,0\n0.1,1,0\n0.3,0,0\n");
  CHECK_THROWS_AS(read_signal(uneven), Error);
}
