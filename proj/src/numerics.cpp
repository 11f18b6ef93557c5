#include "tfconc/numerics.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <utility>

#include "tfconc/core.hpp"

namespace tfconc::numerics {

namespace {

// Legendre P_n(x) and its derivative by the three-term recurrence.
std::pair<double, double> legendre(int n, double x) {
  double p0 = 1.0;
  double p1 = x;
  for (int k = 2; k <= n; ++k) {
    const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
    p0 = p1;
    p1 = p2;
  }
  if (n == 1) p0 = 1.0;
  return {p1, n * (x * p1 - p0) / (x * x - 1.0)};
}

GaussRule build_gauss_legendre(int n) {
  GaussRule rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double x = std::cos(kPi * (i + 0.75) / (n + 0.5));
    for (int iter = 0; iter < 100; ++iter) {
      const auto [p, dp] = legendre(n, x);
      const double dx = p / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    const double dp = legendre(n, x).second;
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    rule.nodes[i] = -x;
    rule.nodes[n - 1 - i] = x;
    rule.weights[i] = w;
    rule.weights[n - 1 - i] = w;
  }
  if (n % 2 == 1) rule.nodes[n / 2] = 0.0;
  return rule;
}

double log_pmf(int j, double lambda) {
  return -lambda + j * std::log(lambda) - std::lgamma(j + 1.0);
}

}  // namespace

const GaussRule& gauss_legendre(int n) {
  if (n < 1) throw Error(ErrorKind::InvalidInput, "Gauss-Legendre order must be positive");
  static std::mutex mutex;
  static std::map<int, GaussRule> cache;
  std::lock_guard lock(mutex);
  auto it = cache.find(n);
  if (it == cache.end()) it = cache.emplace(n, build_gauss_legendre(n)).first;
  return it->second;
}

double poisson_lower(int k, double lambda) {
  if (k <= 0) return 0.0;
  if (lambda <= 0.0) return 1.0;
  if (k == 1) return std::exp(-lambda);
  if (static_cast<double>(k) > lambda + 40.0 * std::sqrt(lambda) + 40.0) {
    return 1.0 - poisson_upper(k, lambda);
  }
  double sum = 0.0;
  for (int j = 0; j < k; ++j) sum += std::exp(log_pmf(j, lambda));
  return std::min(sum, 1.0);
}

double poisson_upper(int k, double lambda) {
  if (k <= 0) return 1.0;
  if (lambda <= 0.0) return 0.0;
  if (static_cast<double>(k) <= lambda) return 1.0 - poisson_lower(k, lambda);
  double sum = 0.0;
  for (int j = k;; ++j) {
    const double term = std::exp(log_pmf(j, lambda));
    sum += term;
    if (term <= 1e-18 * sum || (sum == 0.0 && j > k + 10000)) break;
  }
  return std::min(sum, 1.0);
}

double log_monomial_scale(int k) {
  return 0.5 * (k * std::log(kPi) - std::lgamma(k + 1.0));
}

}  // namespace tfconc::numerics
