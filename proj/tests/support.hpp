#pragma once

#include <cmath>
#include <random>
#include <vector>

#include "tfconc/hermite_fock.hpp"

namespace tfconc::testing {

inline FockCoefficients random_unit_fock(std::mt19937_64& rng, int basis_size) {
  std::normal_distribution<double> normal;
  std::vector<Complex> c(basis_size);
  for (auto& v : c) v = {normal(rng), normal(rng)};
  return FockCoefficients(std::move(c)).normalized();
}

inline double rel_diff(double a, double b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); }

}  // namespace tfconc::testing
