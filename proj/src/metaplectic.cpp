#include "tfconc/metaplectic.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <type_traits>
#include <vector>

#include "tfconc/localization.hpp"

namespace tfconc {

namespace {

constexpr double kDetTolerance = 1e-12;

SampledSignal fourier(const SampledSignal& f) {
  const int n = f.size();
  std::vector<Complex> out(n);
  for (int k = 0; k < n; ++k) {
    const double xi = f.x(k);
    Complex sum = 0.0;
    for (int j = 0; j < n; ++j) {
      if (f[j] == Complex(0.0)) continue;
      sum += f[j] * std::polar(1.0, -2.0 * kPi * f.x(j) * xi);
    }
    out[k] = sum * f.dx();
  }
  return SampledSignal(std::move(out), f.x0(), f.dx());
}

// Band-limited interpolation of the samples at u (Whittaker cardinal series).
Complex sinc_interpolate(const SampledSignal& f, double u) {
  const double s = (u - f.x0()) / f.dx();
  const double nearest = std::round(s);
  if (std::abs(s - nearest) < 1e-12) {
    const int i = static_cast<int>(nearest);
    return i >= 0 && i < f.size() ? f[i] : Complex(0.0);
  }
  Complex sum = 0.0;
  for (int j = 0; j < f.size(); ++j) {
    const double term = (j % 2 == 0 ? 1.0 : -1.0) / (s - j);
    sum += f[j] * term;
  }
  return sum * (std::sin(kPi * s) / kPi);
}

SampledSignal dilation(const SampledSignal& f, double s) {
  if (!(std::abs(s) > 0.0) || !std::isfinite(s)) throw Error(ErrorKind::InvalidInput, "dilation factor must be nonzero");
  std::vector<Complex> out(f.size());
  const double scale = 1.0 / std::sqrt(std::abs(s));
  for (int k = 0; k < f.size(); ++k) out[k] = scale * sinc_interpolate(f, f.x(k) / s);
  return SampledSignal(std::move(out), f.x0(), f.dx());
}

SampledSignal chirp(const SampledSignal& f, double c) {
  if (!std::isfinite(c)) throw Error(ErrorKind::InvalidInput, "chirp parameter must be finite");
  if (c == 0.0) return f;
  std::vector<Complex> out(f.size());
  for (int k = 0; k < f.size(); ++k) {
    const double x = f.x(k);
    out[k] = f[k] * std::polar(1.0, kPi * c * x * x);
  }
  return SampledSignal(std::move(out), f.x0(), f.dx());
}

// |V|^2 at (x, w) by 4 x 4 Lagrange interpolation on the table.
double interpolate_energy(const STFTGrid& grid, const std::vector<double>& energy, PhasePoint z) {
  auto stencil = [](const Axis& axis, double v, int& first, double weights[4]) {
    const double s = (v - axis.origin) / axis.step;
    if (s < 0.0 || s > axis.count - 1) {
      throw Error(ErrorKind::GridTooNarrow, "region leaves the tabulated time-frequency window");
    }
    first = std::clamp(static_cast<int>(std::floor(s)) - 1, 0, axis.count - 4);
    for (int i = 0; i < 4; ++i) {
      double l = 1.0;
      for (int j = 0; j < 4; ++j) {
        if (j != i) l *= (s - (first + j)) / static_cast<double>(i - j);
      }
      weights[i] = l;
    }
  };
  int ix0 = 0, iw0 = 0;
  double wx[4], ww[4];
  stencil(grid.x_axis, z.x, ix0, wx);
  stencil(grid.w_axis, z.w, iw0, ww);
  double sum = 0.0;
  for (int i = 0; i < 4; ++i) {
    const std::size_t row = static_cast<std::size_t>(ix0 + i) * grid.w_axis.count;
    for (int j = 0; j < 4; ++j) sum += wx[i] * ww[j] * energy[row + iw0 + j];
  }
  return sum;
}

}  // namespace

SL2Matrix SL2Matrix::make(double a, double b, double c, double d) {
  if (!std::isfinite(a) || !std::isfinite(b) || !std::isfinite(c) || !std::isfinite(d)) {
    throw Error(ErrorKind::InvalidInput, "matrix entries must be finite");
  }
  if (std::abs(a * d - b * c - 1.0) > kDetTolerance) {
    std::ostringstream msg;
    msg << "determinant must be 1, got " << a * d - b * c;
    throw Error(ErrorKind::InvalidInput, msg.str());
  }
  return {a, b, c, d};
}

SL2Matrix SL2Matrix::rotation(double angle) {
  const double cs = std::cos(angle), sn = std::sin(angle);
  return {cs, sn, -sn, cs};
}

SL2Matrix SL2Matrix::shear(double c) { return {1.0, 0.0, c, 1.0}; }

SL2Matrix SL2Matrix::dilation(double s) {
  if (!(s != 0.0) || !std::isfinite(s)) throw Error(ErrorKind::InvalidInput, "dilation factor must be nonzero");
  return {s, 0.0, 0.0, 1.0 / s};
}

SL2Matrix parse_sl2(const std::string& text) {
  std::istringstream in(text);
  double v[4];
  for (int i = 0; i < 4; ++i) {
    std::string item;
    if (!std::getline(in, item, ',')) throw Error(ErrorKind::InvalidInput, "expected four entries a,b,c,d");
    try {
      std::size_t used = 0;
      v[i] = std::stod(item, &used);
      if (item.find_first_not_of(" \t", used) != std::string::npos) throw std::invalid_argument(item);
    } catch (const std::logic_error&) {
      throw Error(ErrorKind::InvalidInput, "malformed matrix entry '" + item + "'");
    }
  }
  std::string rest;
  if (std::getline(in, rest)) throw Error(ErrorKind::InvalidInput, "expected four entries a,b,c,d");
  return SL2Matrix::make(v[0], v[1], v[2], v[3]);
}

SampledSignal apply_generator(const SampledSignal& f, const Generator& g) {
  return std::visit(
      [&](const auto& gen) -> SampledSignal {
        using T = std::decay_t<decltype(gen)>;
        if constexpr (std::is_same_v<T, FourierGenerator>) {
          return fourier(f);
        } else if constexpr (std::is_same_v<T, DilationGenerator>) {
          return dilation(f, gen.s);
        } else {
          return chirp(f, gen.c);
        }
      },
      g);
}

SampledSignal apply_sl2(const SampledSignal& f, const SL2Matrix& m) {
  const SL2Matrix checked = SL2Matrix::make(m.a, m.b, m.c, m.d);
  if (checked.b != 0.0) {
    SampledSignal out = chirp(f, checked.a / checked.b);
    out = fourier(out);
    out = dilation(out, checked.b);
    return chirp(out, checked.d / checked.b);
  }
  SampledSignal out = checked.a == 1.0 ? f : dilation(f, checked.a);
  return chirp(out, checked.c / checked.a);
}

double stft_concentration(const STFTGrid& grid, const Region& region, int order) {
  if (grid.x_axis.count < 4 || grid.w_axis.count < 4) {
    throw Error(ErrorKind::GridTooNarrow, "need at least four STFT samples per axis");
  }
  std::vector<double> energy(grid.values.size());
  for (std::size_t i = 0; i < energy.size(); ++i) energy[i] = std::norm(grid.values[i]);
  const double total = grid.energy();
  if (!(total > 0.0)) throw Error(ErrorKind::ZeroFunction, "STFT vanishes on the grid");
  const auto rule = quadrature(region, order);
  double inside = 0.0;
  for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
    inside += rule.weights[i] * interpolate_energy(grid, energy, rule.nodes[i]);
  }
  return inside / total;
}

CovarianceReport covariance_check(const SampledSignal& f, const SL2Matrix& m, const Region& region) {
  const SL2Matrix checked = SL2Matrix::make(m.a, m.b, m.c, m.d);
  const SampledSignal window = apply_sl2(gaussian_window(0.0, 0.0, f.axis()), checked);
  const SampledSignal moved = apply_sl2(f, checked);
  const auto grid = stft(moved, window, default_stft_axis(), default_stft_axis());

  CovarianceReport report;
  report.lhs = stft_concentration(grid, region);
  const Matrix2 mirror{1.0, 0.0, 0.0, -1.0};
  const Region pulled = Region::affine(mirror * checked.inverse().matrix(), {0.0, 0.0}, region);
  report.rhs = phi_of(signal_to_fock(f, 64), pulled);
  report.rel_err = std::abs(report.lhs - report.rhs) / std::max(std::abs(report.rhs), 1e-300);
  return report;
}

}  // namespace tfconc
