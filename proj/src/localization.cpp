#include "tfconc/localization.hpp"

#include <algorithm>
#include <cmath>

#include "tfconc/bounds.hpp"
#include "tfconc/numerics.hpp"

namespace tfconc {

namespace {

void check_exponent(double p, double lowest) {
  if (!std::isfinite(p) || p < lowest || p > 64.0) {
    throw Error(ErrorKind::BadExponent, "exponent p must lie in [" + std::to_string(int(lowest)) + ", 64]");
  }
}

double weighted_power_integral(const FockCoefficients& f, const Region& region, double p, int order) {
  const auto rule = quadrature(region, std::max(order, f.basis_size()));
  return rule.integrate([&](PhasePoint z) { return std::pow(std::abs(fock_eval_weighted(f, z)), p); });
}

}  // namespace

LocalizationMatrix::LocalizationMatrix(Eigen::MatrixXcd entries, double region_measure, PhasePoint center)
    : entries_(std::move(entries)), region_measure_(region_measure), center_(center) {}

double LocalizationMatrix::trace() const { return entries_.trace().real(); }

double LocalizationMatrix::hermitian_defect() const {
  return (entries_ - entries_.adjoint()).cwiseAbs().maxCoeff();
}

std::vector<double> LocalizationMatrix::spectrum() const {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(entries_, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) throw Error(ErrorKind::NotConverged, "eigensolver did not converge");
  const auto& ev = solver.eigenvalues();
  std::vector<double> out(ev.data(), ev.data() + ev.size());
  std::sort(out.begin(), out.end(), std::greater<>());
  return out;
}

LocalizationMatrix assemble(const Region& region, int basis_size, int order) {
  if (basis_size < 8) throw Error(ErrorKind::InvalidInput, "localization basis size must be at least 8");
  const auto center = bounding_disk(region).center;
  const auto rule = translated(quadrature(region, std::max(order, basis_size)), center);
  const auto q = static_cast<Eigen::Index>(rule.size());
  // Rows hold sqrt(w) e_j(z) e^{-pi|z|^2/2}, built by the stable ratio e_{j+1}/e_j = z sqrt(pi/(j+1)).
  Eigen::MatrixXcd b(q, basis_size);
  for (Eigen::Index i = 0; i < q; ++i) {
    const auto z = rule.nodes[i];
    const Complex zc = z.z();
    Complex v = std::sqrt(rule.weights[i]) * std::exp(-0.5 * kPi * z.norm2());
    for (int j = 0; j < basis_size; ++j) {
      b(i, j) = v;
      v *= zc * std::sqrt(kPi / (j + 1));
    }
  }
  Eigen::MatrixXcd m = b.transpose() * b.conjugate();
  m = 0.5 * (m + m.adjoint()).eval();
  return LocalizationMatrix(std::move(m), measure(region), center);
}

std::vector<double> radial_eigenvalues(double r, int basis_size) {
  if (!(r > 0.0) || !std::isfinite(r)) throw Error(ErrorKind::InvalidInput, "radius must be positive");
  if (basis_size < 1) throw Error(ErrorKind::InvalidInput, "basis size must be positive");
  std::vector<double> out(basis_size);
  for (int k = 0; k < basis_size; ++k) out[k] = gamma_ratio(k + 1, kPi * r * r);
  return out;
}

int default_basis_size(const Region& region) {
  const double r = bounding_disk(region).radius;
  const double mass = kPi * r * r;
  return static_cast<int>(std::ceil(mass) + std::ceil(8.0 * std::sqrt(mass))) + 16;
}

ConcentrationReport phi_max(const Region& region, int basis_size, int order) {
  const int n = basis_size > 0 ? basis_size : default_basis_size(region);
  const auto matrix = assemble(region, n, order);
  const auto& m = matrix.entries();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(m);
  if (solver.info() != Eigen::Success) throw Error(ErrorKind::NotConverged, "eigensolver did not converge");
  const Eigen::Index top = m.rows() - 1;
  const double lambda = solver.eigenvalues()(top);
  const Eigen::VectorXcd v = solver.eigenvectors().col(top);
  const double scale = std::max(m.norm(), 1e-300);
  if ((m * v - lambda * v).norm() > 1e-11 * scale) {
    throw Error(ErrorKind::NotConverged, "top eigenpair residual above 1e-11 ||M||");
  }
  if (lambda < -1e-10 || lambda > 1.0 + 1e-10) {
    throw Error(ErrorKind::NotConverged, "localization eigenvalue outside [0, 1]");
  }

  ConcentrationReport report;
  report.phi = lambda;
  report.measure = matrix.region_measure();
  report.sharp_bound = faber_krahn_bound(1, report.measure);
  report.gap = report.sharp_bound - report.phi;
  report.basis_size = n;
  const double r = bounding_disk(region).radius;
  report.truncation_estimate = numerics::poisson_upper(n, kPi * r * r);
  return report;
}

double phi_of(const FockCoefficients& f, const Region& region, int order) {
  const double total = f.norm2();
  if (total == 0.0) throw Error(ErrorKind::ZeroFunction, "concentration of the zero function is undefined");
  const auto rule = quadrature(region, std::max(order, f.basis_size()));
  return rule.integrate([&](PhasePoint z) { return fock_density(f, z); }) / total;
}

double lp_concentration(const FockCoefficients& f, const Region& region, double p, int order) {
  check_exponent(p, 1.0);
  if (f.norm2() == 0.0) throw Error(ErrorKind::ZeroFunction, "concentration of the zero function is undefined");
  if (p == 2.0) return phi_of(f, region, order);
  const double total = std::pow(fock_norm(f, p), p);
  return weighted_power_integral(f, region, p, order) / total;
}

double local_lieb(const FockCoefficients& f, const Region& region, double p, int order) {
  check_exponent(p, 2.0);
  if (f.norm2() == 0.0) throw Error(ErrorKind::ZeroFunction, "concentration of the zero function is undefined");
  return weighted_power_integral(f, region, p, order) / std::pow(f.norm(), p);
}

}  // namespace tfconc
