#pragma once

#include <vector>

#include <Eigen/Dense>

#include "tfconc/core.hpp"
#include "tfconc/hermite_fock.hpp"
#include "tfconc/regions.hpp"

namespace tfconc {

/// Matrix of the localization operator on the first N Fock monomials,
/// M_jk = int_region e_j conj(e_k) e^{-pi|z|^2} dz, after translating the
/// region so that its bounding disk is centered at the origin.
class LocalizationMatrix {
 public:
  LocalizationMatrix(Eigen::MatrixXcd entries, double region_measure, PhasePoint center);

  const Eigen::MatrixXcd& entries() const { return entries_; }
  double region_measure() const { return region_measure_; }
  int basis_size() const { return static_cast<int>(entries_.rows()); }
  /// Translation applied to the region before assembly.
  PhasePoint center() const { return center_; }

  double trace() const;
  /// Largest |M - M^H| entry.
  double hermitian_defect() const;
  /// All eigenvalues, largest first.
  std::vector<double> spectrum() const;

 private:
  Eigen::MatrixXcd entries_;
  double region_measure_;
  PhasePoint center_;
};

struct ConcentrationReport {
  double phi = 0.0;
  double sharp_bound = 0.0;
  double gap = 0.0;
  double measure = 0.0;
  int basis_size = 0;
  /// Poisson tail P(Pois(pi R^2) >= N) of the truncated reproducing kernel.
  double truncation_estimate = 0.0;
};

constexpr int kDefaultOrder = 64;

/// Requires N >= 8. The quadrature order used is max(order, N).
LocalizationMatrix assemble(const Region& region, int basis_size, int order = kDefaultOrder);

/// gamma(k+1, pi r^2) / k!, k < N: the spectrum for a disk of radius r.
std::vector<double> radial_eigenvalues(double r, int basis_size);

/// ceil(pi R^2) + ceil(8 sqrt(pi R^2)) + 16 with R the bounding radius.
int default_basis_size(const Region& region);

/// Largest eigenvalue of the localization matrix. basis_size <= 0 picks the default.
ConcentrationReport phi_max(const Region& region, int basis_size = 0, int order = kDefaultOrder);

/// Fraction of ||F||^2 carried by the region (no recentering).
double phi_of(const FockCoefficients& f, const Region& region, int order = kDefaultOrder);

/// int_region |F|^p e^{-p pi |z|^2/2} over the same integral on the whole plane, p in [1, 64].
double lp_concentration(const FockCoefficients& f, const Region& region, double p, int order = kDefaultOrder);

/// int_region |F|^p e^{-p pi |z|^2/2} / ||F||^p, p in [2, 64].
double local_lieb(const FockCoefficients& f, const Region& region, double p, int order = kDefaultOrder);

}  // namespace tfconc
