#pragma once

#include <iosfwd>
#include <span>
#include <vector>

#include "tfconc/core.hpp"
#include "tfconc/hermite_fock.hpp"

namespace tfconc {

/// Uniform axis origin + i * step, i < count.
struct Axis {
  double origin = 0.0;
  double step = 1.0;
  int count = 0;

  double at(int i) const { return origin + i * step; }
  double last() const { return at(count - 1); }
};

/// x in [-8, 8] with spacing 1/64.
Axis default_signal_axis();
/// [-6, 6] with spacing 1/32, used for both STFT axes.
Axis default_stft_axis();

/// Uniform samples of a function on the real line. The samples at both ends
/// must be below 1e-8 times the peak magnitude (GridTooNarrow otherwise).
class SampledSignal {
 public:
  SampledSignal(std::vector<Complex> samples, double x0, double dx);

  std::span<const Complex> samples() const { return samples_; }
  double x0() const { return x0_; }
  double dx() const { return dx_; }
  int size() const { return static_cast<int>(samples_.size()); }
  double x(int i) const { return x0_ + i * dx_; }
  Axis axis() const { return {x0_, dx_, size()}; }
  Complex operator[](int i) const { return samples_[i]; }

  /// Discrete L2 norm squared, sum |f_j|^2 dx.
  double norm2() const;
  double norm() const;

 private:
  std::vector<Complex> samples_;
  double x0_;
  double dx_;
};

/// Row-major STFT values: value(ix, iw) = V f(x_axis.at(ix), w_axis.at(iw)).
struct STFTGrid {
  Axis x_axis;
  Axis w_axis;
  std::vector<Complex> values;

  Complex value(int ix, int iw) const { return values[static_cast<std::size_t>(ix) * w_axis.count + iw]; }
  /// sum |V|^2 dx dw.
  double energy() const;
  double max_abs() const;
};

/// c e^{2 pi i w0 x} 2^{1/4} e^{-pi (x - x0)^2} with c = 1, sampled on `axis`.
/// The axis must cover [x0 - 5, x0 + 5].
SampledSignal gaussian_window(double x0, double w0, const Axis& axis = default_signal_axis());

/// h_0, ..., h_{count-1} at the points xs; result[k][j] = h_k(xs[j]).
/// Normalized Hermite functions with h_0 the Gaussian window, so that the
/// Bargmann transform maps h_k to e_k.
std::vector<std::vector<double>> hermite_functions(int count, std::span<const double> xs);
SampledSignal hermite_function(int k, const Axis& axis = default_signal_axis());

/// V f(x, w) = int e^{-2 pi i y w} f(y) g(x - y) dy with the Gaussian window
/// g, by direct Riemann sum (one fixed summation order per cell).
STFTGrid stft(const SampledSignal& f, const Axis& x_axis = default_stft_axis(),
              const Axis& w_axis = default_stft_axis());

/// STFT with a sampled window: V_g f(x, w) = int e^{-2 pi i y w} f(y) conj(g(y - x)) dy.
/// The window must share the signal's spacing and every x must shift the
/// window by a whole number of samples.
STFTGrid stft(const SampledSignal& f, const SampledSignal& window, const Axis& x_axis, const Axis& w_axis);

/// Single STFT value with the Gaussian window.
Complex stft_point(const SampledSignal& f, PhasePoint z);

/// Hermite coefficients c_k = <f, h_k>, k < N (N <= 256). Throws BasisTooSmall
/// when ||f||^2 - ||c||^2 exceeds residual_tolerance * ||f||^2.
FockCoefficients signal_to_fock(const SampledSignal& f, int basis_size, double residual_tolerance = 1e-6);

/// Worst discrepancy between |V f(x, -w)| and |F(z)| e^{-pi|z|^2/2}, z = x + i w,
/// F = signal_to_fock(f, N), relative to ||f||.
double bargmann_identity_check(const SampledSignal& f, int basis_size, std::span<const PhasePoint> points);

// Text format: "# signal v1" header, then uniformly spaced "x,re,im" rows.
SampledSignal read_signal(std::istream& in);
void write_signal(std::ostream& out, const SampledSignal& f);

}  // namespace tfconc
