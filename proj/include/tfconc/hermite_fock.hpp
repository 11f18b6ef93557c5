#pragma once

#include <iosfwd>
#include <span>
#include <vector>

#include "tfconc/core.hpp"

namespace tfconc {

/// Finite expansion F = sum_k c_k e_k in the monomial basis
/// e_k(z) = (pi^k / k!)^{1/2} z^k of the Fock space F^2(C).
///
/// The coefficient 2-norm is exactly the F^2 norm. Instances are immutable.
class FockCoefficients {
 public:
  explicit FockCoefficients(std::vector<Complex> coeffs);

  /// The k-th basis element e_k padded to `basis_size` coefficients.
  static FockCoefficients basis(int k, int basis_size);

  std::span<const Complex> coeffs() const { return coeffs_; }
  int basis_size() const { return static_cast<int>(coeffs_.size()); }
  Complex operator[](int k) const { return coeffs_[k]; }

  double norm2() const { return norm2_; }
  double norm() const;

  FockCoefficients scaled(Complex factor) const;
  /// Throws ZeroFunction for the zero vector.
  FockCoefficients normalized() const;

  /// F(z) and F'(z) by Horner on the rescaled polynomial coefficients.
  /// Valid while the rescaled coefficients are representable (basis_size <= 256).
  void eval_with_derivative(Complex z, Complex& value, Complex& derivative) const;

 private:
  friend Complex fock_eval(const FockCoefficients&, PhasePoint);
  friend Complex fock_eval_weighted(const FockCoefficients&, PhasePoint);

  std::vector<Complex> coeffs_;
  std::vector<Complex> poly_;  // c_k (pi^k/k!)^{1/2}, empty when not representable
  double norm2_ = 0.0;
};

struct CoherentParams {
  PhasePoint z0;
  Complex amplitude{1.0, 0.0};
};

/// (pi^k/k!)^{1/2} z^k evaluated in log scale, finite for k < 10^4.
Complex monomial_eval(int k, PhasePoint z);

/// F(z).
Complex fock_eval(const FockCoefficients& f, PhasePoint z);

/// F(z) e^{-pi|z|^2/2}, whose squared modulus is the STFT energy density.
Complex fock_eval_weighted(const FockCoefficients& f, PhasePoint z);

/// |F(z)|^2 e^{-pi|z|^2}.
double fock_density(const FockCoefficients& f, PhasePoint z);

struct FockNormOptions {
  double tail_tolerance = 1e-12;  // relative to ||F||_{F^2}^p
  int order = 96;
  double max_radius = 12.0;
};

/// (int |F|^p e^{-p pi |z|^2 / 2} dz)^{1/p}. The p = 2 path is the exact
/// coefficient norm; other exponents integrate over a disk whose radius is
/// certified by the Poisson bound on the truncated reproducing kernel.
double fock_norm(const FockCoefficients& f, double p, const FockNormOptions& options = {});

/// Radius R beyond which int |F|^p e^{-p pi |z|^2/2} is below tolerance * ||F||_2^p.
/// Throws TailTooLarge if R would exceed options.max_radius.
double fock_norm_radius(const FockCoefficients& f, double p, const FockNormOptions& options = {});

/// Poisson tail sum_{k >= N} lambda^k e^{-lambda} / k!, lambda = pi |z0|^2.
double coherent_tail(PhasePoint z0, int basis_size);

/// Smallest N with coherent_tail(z0, N) < tolerance.
int coherent_basis_size(PhasePoint z0, double tolerance = 1e-12);

/// c e^{-pi|z0|^2/2} conj(e_k(z0)), k < N. Throws BasisTooSmall when the
/// dropped tail exceeds 1e-12 |c|^2.
FockCoefficients coherent_state(const CoherentParams& params, int basis_size);

/// (U_{z0} F)(z) = e^{-pi|z0|^2/2} e^{pi z conj(z0)} F(z - z0).
Complex translate_eval(const FockCoefficients& f, PhasePoint z0, PhasePoint z);

// Text format: "# fock-coeffs v1" header, then "k,re,im" rows with k = 0, 1, ...
FockCoefficients read_fock_coefficients(std::istream& in);
void write_fock_coefficients(std::ostream& out, const FockCoefficients& f);

}  // namespace tfconc
