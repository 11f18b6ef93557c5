// Acceptance suite: one PASS/FAIL line per criterion.
//
// Exit status is 0 when the set of failing criteria equals the set given
// with --expect-fail (comma separated, default empty).

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "tfconc/bounds.hpp"
#include "tfconc/cli.hpp"
#include "tfconc/gabor.hpp"
#include "tfconc/localization.hpp"
#include "tfconc/metaplectic.hpp"
#include "tfconc/rearrange.hpp"

using namespace tfconc;

namespace {

constexpr double kBallValue = 0.95678608173622775;  // 1 - e^{-pi}

struct Outcome {
  bool pass;
  std::string detail;
};

std::string fmt(const char* format, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, format, args...);
  return buf;
}

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

FockCoefficients random_unit_fock(std::mt19937_64& rng, int n) {
  std::normal_distribution<double> normal;
  std::vector<Complex> c(n);
  for (auto& v : c) v = {normal(rng), normal(rng)};
  return FockCoefficients(std::move(c)).normalized();
}

Outcome sharp_value_on_ball() {
  const auto start = std::chrono::steady_clock::now();
  const double centred = phi_max(Region::disk({0.0, 0.0}, 1.0), 64).phi;
  const double moved = phi_max(Region::disk({1.3, -0.7}, 1.0), 64).phi;
  const double elapsed = seconds_since(start);
  const double e1 = std::abs(centred - kBallValue), e2 = std::abs(moved - kBallValue);
  return {e1 < 1e-8 && e2 < 1e-7 && elapsed < 5.0,
          fmt("|err| centred %.2e, translated %.2e, %.2f s", e1, e2, elapsed)};
}

Outcome radial_spectrum() {
  double worst = 0.0;
  for (double r : {0.5, 1.0, 2.0}) {
    const auto spectrum = assemble(Region::disk({0.0, 0.0}, r), 64).spectrum();
    const auto closed = radial_eigenvalues(r, 64);
    for (int k = 0; k < 20; ++k) worst = std::max(worst, std::abs(spectrum[k] - closed[k]));
  }
  return {worst < 1e-8, fmt("max |eig - gamma(k+1, pi r^2)/k!| = %.2e", worst)};
}

Outcome non_balls_are_suboptimal() {
  const double side = std::sqrt(kPi);
  const double square = phi_max(Region::rect({-side / 2, -side / 2}, side, side)).phi;
  const double r = std::sqrt(0.5);
  const double pair =
      phi_max(Region::set_union({Region::disk({-1.5, 0.0}, r), Region::disk({1.5, 0.0}, r)})).phi;
  const double limit = kBallValue - 1e-4;
  return {square < limit && pair < limit, fmt("square %.9f, two disks %.9f, limit %.9f", square, pair, limit)};
}

Outcome universal_bound() {
  std::mt19937_64 rng(4);
  std::uniform_real_distribution<double> centre(-1.5, 1.5), radius(0.2, 1.3), shear(-1.5, 1.5);
  std::uniform_int_distribution<int> size(1, 16);
  double worst = -1.0;
  for (int i = 0; i < 50; ++i) {
    Region region = Region::disk({centre(rng), centre(rng)}, radius(rng));
    switch (i % 4) {
      case 1:
        region = Region::affine({1.0, 0.0, shear(rng), 1.0}, {0.0, 0.0}, region);
        break;
      case 2:
        region = Region::rect({centre(rng), centre(rng)}, radius(rng) * 2, radius(rng));
        break;
      case 3:
        region = Region::set_union({region, Region::disk({centre(rng), centre(rng)}, radius(rng))});
        break;
      default:
        break;
    }
    const auto f = random_unit_fock(rng, size(rng));
    const double m = measure(region);
    worst = std::max(worst, phi_of(f, region) - faber_krahn_bound(1, m));
    for (double p : {1.0, 2.0, 3.0}) worst = std::max(worst, lp_concentration(f, region, p) - lp_bound(p, m));
  }
  return {worst <= 1e-8, fmt("largest excess over the bound %.2e over 50 pairs", worst)};
}

Outcome trace_law() {
  const double disk = std::abs(assemble(Region::disk({0.0, 0.0}, 1.0), 64).trace() - kPi);
  const double rect = std::abs(assemble(Region::rect({-0.4, -0.6}, 1.0, 1.0), 64).trace() - 1.0);
  return {disk < 1e-6 && rect < 1e-6, fmt("|trace - measure| disk %.2e, rect %.2e", disk, rect)};
}

Outcome psi_and_volumes() {
  double log_err = 0.0;
  for (int i = 1; i <= 50; ++i) {
    const double eps = std::pow(10.0, -10.0 * i / 50.0);
    log_err = std::max(log_err, std::abs(psi(1, eps) - std::log(1.0 / eps)));
  }
  double inverse_err = 0.0;
  for (int d : {1, 2, 3}) {
    for (int i = 1; i < 50; ++i) {
      const double eps = i / 50.0;
      inverse_err = std::max(inverse_err, std::abs(gamma_ratio(d, psi(d, eps)) - (1.0 - eps)));
    }
  }
  bool ratios_ok = true;
  std::string ratios;
  for (int d : {1, 2, 3}) {
    const double near_one = psi(d, 0.999) / std::pow(std::tgamma(d + 1.0) * 1e-3, 1.0 / d);
    const double near_zero = psi(d, 1e-8) / std::log(1e8);
    ratios_ok = ratios_ok && std::abs(near_one - 1.0) <= 0.05 && std::abs(near_zero - 1.0) <= 0.05;
    ratios += fmt(" d=%d: %.4f/%.4f", d, near_one, near_zero);
  }
  return {log_err < 1e-12 && inverse_err < 1e-10 && ratios_ok,
          fmt("log err %.1e, inverse err %.1e, ratios at eps=0.999/1e-8:", log_err, inverse_err) + ratios};
}

Outcome prior_art_dominance() {
  double worst_gap = 1e300, worst_cap = -1e300;
  for (int d : {1, 2}) {
    for (int k = 0; k < 199; ++k) {
      const double eps = 0.01 + 0.98 * k / 198.0;
      const double prior = prior_art_bound(d, eps);
      worst_gap = std::min(worst_gap, min_volume(d, eps) - prior);
      worst_cap = std::max(worst_cap, prior - std::exp(d));
    }
  }
  return {worst_gap >= 0.0 && worst_cap <= 1e-9,
          fmt("min(sharp - prior) %.3e, max(prior - e^d) %.3e", worst_gap, worst_cap)};
}

Outcome lieb_family() {
  const auto e0 = FockCoefficients::basis(0, 1);
  double worst = 0.0;
  for (double p : {1.0, 2.0, 4.0}) worst = std::max(worst, std::abs(std::pow(fock_norm(e0, p), p) - 2.0 / p));
  const double local = std::abs(local_lieb(e0, Region::disk({0.0, 0.0}, 1.0), 4.0) - 0.5 * (1.0 - std::exp(-2 * kPi)));
  return {worst < 1e-8 && local < 1e-8, fmt("norm err %.2e, local Lieb err %.2e", worst, local)};
}

Outcome rearrangement_suite() {
  const auto gauss = rearrangement_profile(density(FockCoefficients::basis(0, 1)), 8.0, 64);
  double gauss_err = 0.0;
  for (std::size_t i = 0; i < gauss.s_grid.size(); ++i) {
    gauss_err = std::max(gauss_err, std::abs(gauss.I_vals[i] + std::expm1(-gauss.s_grid[i])));
  }
  std::mt19937_64 rng(7);
  double worst_a = 0.0, worst_b = 0.0, worst_c = 0.0;
  for (int i = 0; i < 20; ++i) {
    const auto profile = rearrangement_profile(density(random_unit_fock(rng, 16)), 8.0, 64);
    const auto report = verify_differential_structure(profile);
    worst_a = std::max(worst_a, report.max_violation_exp_monotone);
    worst_b = std::max(worst_b, report.max_convexity_violation_G);
    worst_c = std::max(worst_c, report.max_I_bound_violation);
  }
  return {gauss_err < 1e-7 && worst_a < 1e-6 && worst_b < 1e-6 && worst_c <= 1e-7,
          fmt("Gaussian I err %.2e; random: monotone %.2e, convexity %.2e, bound %.2e", gauss_err, worst_a, worst_b,
              worst_c)};
}

Outcome stft_integrity() {
  const Axis axis = default_signal_axis();
  std::vector<Complex> combo(axis.count, 0.0);
  const std::pair<int, Complex> terms[] = {{0, {0.6, 0.0}}, {1, {0.0, 0.5}}, {3, {0.3, -0.55}}};
  for (const auto& [k, c] : terms) {
    const auto h = hermite_function(k, axis);
    for (int j = 0; j < axis.count; ++j) combo[j] += c * h[j];
  }
  const std::vector<SampledSignal> signals{gaussian_window(0.0, 0.0), gaussian_window(0.7, -1.2),
                                           SampledSignal(combo, axis.origin, axis.step)};
  std::vector<PhasePoint> points;
  std::mt19937_64 rng(10);
  std::uniform_real_distribution<double> coord(-2.5, 2.5);
  for (int i = 0; i < 40; ++i) points.push_back({coord(rng), coord(rng)});
  double iso = 0.0, bargmann = 0.0;
  for (const auto& f : signals) {
    iso = std::max(iso, std::abs(stft(f).energy() - f.norm2()) / f.norm2());
    bargmann = std::max(bargmann, bargmann_identity_check(f, 64, points));
  }
  return {iso < 1e-4 && bargmann < 1e-5, fmt("isometry rel err %.2e, Bargmann identity err %.2e", iso, bargmann)};
}

Outcome covariance() {
  const auto unit = Region::disk({0.0, 0.0}, 1.0);
  const auto skew = Region::affine({1.0, 0.0, 1.0, 1.0}, {0.0, 0.0}, unit);
  double worst = 0.0;
  for (const auto& f : {gaussian_window(0.0, 0.0), hermite_function(1)}) {
    for (const auto& a : {SL2Matrix::rotation(kPi / 2), SL2Matrix::shear(1.0)}) {
      for (const auto& region : {unit, skew}) worst = std::max(worst, covariance_check(f, a, region).rel_err);
    }
  }
  return {worst <= 1e-3, fmt("max rel err %.2e over 8 cases", worst)};
}

std::vector<std::vector<double>> read_table(const std::filesystem::path& path) {
  std::ifstream in(path);
  std::vector<std::vector<double>> rows;
  for (std::string line; std::getline(in, line);) {
    if (line.empty() || line[0] == '#' || !(std::isdigit(static_cast<unsigned char>(line[0])) || line[0] == '-')) {
      continue;
    }
    std::vector<double> row;
    std::istringstream cells(line);
    for (std::string cell; std::getline(cells, cell, ',');) row.push_back(std::stod(cell));
    rows.push_back(row);
  }
  return rows;
}

Outcome runtime_and_figures(std::chrono::steady_clock::time_point suite_start) {
  const auto dir = std::filesystem::temp_directory_path() / ("tfconc_accept_" + std::to_string(std::random_device{}()));
  const std::string out = dir.string();
  const char* argv[] = {"tfconc", "figures", "--out", out.c_str()};
  std::ostringstream sink;
  const int code = cli::run(4, argv, sink, sink);
  bool ordered = code == 0;
  for (int d : {1, 2}) {
    for (const auto& row : read_table(dir / ("fig1_d" + std::to_string(d) + ".csv"))) {
      ordered = ordered && row[1] >= row[2] && row[2] <= std::exp(d) + 1e-9;
    }
  }
  const auto right = read_table(dir / "fig2_right.csv");
  ordered = ordered && right.size() == 199;
  for (const auto& row : right) ordered = ordered && row[1] <= row[2] && row[2] <= row[3];
  std::filesystem::remove_all(dir);
  const double elapsed = seconds_since(suite_start);
  return {ordered && elapsed < 120.0, fmt("figure orderings %s, acceptance runtime %.1f s", ordered ? "hold" : "broken", elapsed)};
}

}  // namespace

int main(int argc, char** argv) {
  std::set<int> expected;
  for (int i = 1; i + 1 < argc; ++i) {
    if (std::string(argv[i]) == "--expect-fail") {
      std::istringstream list(argv[i + 1]);
      for (std::string item; std::getline(list, item, ',');) expected.insert(std::stoi(item));
    }
  }

  const auto suite_start = std::chrono::steady_clock::now();
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"sharp value on the ball", sharp_value_on_ball},
      {"radial spectrum", radial_spectrum},
      {"strict suboptimality of non-balls", non_balls_are_suboptimal},
      {"universal bound", universal_bound},
      {"trace law", trace_law},
      {"psi and volume bounds", psi_and_volumes},
      {"prior-art dominance", prior_art_dominance},
      {"Lieb family", lieb_family},
      {"rearrangement suite", rearrangement_suite},
      {"STFT integrity", stft_integrity},
      {"covariance", covariance},
      {"runtime and figures", [&] { return runtime_and_figures(suite_start); }},
  };

  std::set<int> failed;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const int id = static_cast<int>(i) + 1;
    const auto start = std::chrono::steady_clock::now();
    Outcome outcome;
    try {
      outcome = criteria[i].second();
    } catch (const std::exception& e) {
      outcome = {false, std::string("threw: ") + e.what()};
    }
    if (!outcome.pass) failed.insert(id);
    std::printf("%s criterion %2d  %-34s %s (%.1f s)\n", outcome.pass ? "PASS" : "FAIL", id,
                criteria[i].first.c_str(), outcome.detail.c_str(), seconds_since(start));
    std::fflush(stdout);
  }
  std::printf("%zu/%zu criteria pass\n", criteria.size() - failed.size(), criteria.size());
  if (!expected.empty()) {
    std::printf("expected failures:");
    for (int id : expected) std::printf(" %d", id);
    std::printf("\n");
  }
  return failed == expected ? 0 : 1;
}
