#pragma once

#include <vector>

namespace tfconc::numerics {

/// Gauss-Legendre rule on [-1, 1]. Results are cached per order.
struct GaussRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

const GaussRule& gauss_legendre(int n);

/// P(Poisson(lambda) < k) = e^{-lambda} sum_{j<k} lambda^j / j!, summed in log space.
double poisson_lower(int k, double lambda);

/// P(Poisson(lambda) >= k), summed term by term (no cancellation for small tails).
double poisson_upper(int k, double lambda);

/// log((pi^k / k!)^{1/2}), the log-scale of the k-th Fock basis monomial.
double log_monomial_scale(int k);

}  // namespace tfconc::numerics
