#pragma once

#include <string>
#include <variant>

#include "tfconc/gabor.hpp"
#include "tfconc/regions.hpp"

namespace tfconc {

/// [[a, b], [c, d]] acting on (x, w), with ad - bc = 1.
struct SL2Matrix {
  double a = 1.0, b = 0.0, c = 0.0, d = 1.0;

  /// Throws InvalidInput unless |ad - bc - 1| <= 1e-12.
  static SL2Matrix make(double a, double b, double c, double d);
  static SL2Matrix rotation(double angle);
  static SL2Matrix shear(double c);
  static SL2Matrix dilation(double s);

  SL2Matrix inverse() const { return {d, -b, -c, a}; }
  Matrix2 matrix() const { return {a, b, c, d}; }
};

/// Parses "a,b,c,d".
SL2Matrix parse_sl2(const std::string& text);

struct FourierGenerator {};
/// f(x) -> |s|^{-1/2} f(x / s), the action of diag(s, 1/s).
struct DilationGenerator {
  double s = 1.0;
};
/// f(x) -> e^{pi i c x^2} f(x), the action of [[1, 0], [c, 1]].
struct ChirpGenerator {
  double c = 0.0;
};
using Generator = std::variant<FourierGenerator, DilationGenerator, ChirpGenerator>;

/// Output lives on the input grid. Fourier is the Riemann sum of
/// int f(y) e^{-2 pi i x y} dy (the action of [[0, 1], [-1, 0]]), dilation
/// resamples by band-limited (sinc) interpolation. Throws GridTooNarrow when
/// the result does not decay inside the grid.
SampledSignal apply_generator(const SampledSignal& f, const Generator& g);

/// mu(A) f up to a global phase, normalized so that
/// |V_{mu(A) g} mu(A) f (z)| = |V_g f(A^{-1} z)|.
/// b != 0: chirp(a/b), Fourier, dilation(b), chirp(d/b). b = 0: dilation(a), chirp(c/a).
SampledSignal apply_sl2(const SampledSignal& f, const SL2Matrix& m);

/// int_region |V|^2 / sum |V|^2 dx dw for a tabulated STFT, with |V|^2
/// interpolated by bicubic Lagrange. Quadrature nodes outside the table
/// raise GridTooNarrow.
double stft_concentration(const STFTGrid& grid, const Region& region, int order = 64);

struct CovarianceReport {
  double lhs = 0.0;  // concentration of mu(A) f with window mu(A) phi on the region
  double rhs = 0.0;  // concentration of f with window phi on A^{-1}(region)
  double rel_err = 0.0;
};

/// lhs from the tabulated STFT on the default axes; rhs = phi_of of the Fock
/// image of f (64 basis functions) on A^{-1}(region), mirrored w -> -w to
/// match the Bargmann convention.
CovarianceReport covariance_check(const SampledSignal& f, const SL2Matrix& m, const Region& region);

}  // namespace tfconc
