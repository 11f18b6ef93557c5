#include "tfconc/gabor.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>

namespace tfconc {

namespace {

const double kWindowScale = std::pow(2.0, 0.25);
// e^{-pi 6^2} is far below double resolution relative to the window peak.
constexpr double kWindowReach = 6.0;

double window_value(double t) { return kWindowScale * std::exp(-kPi * t * t); }

bool is_finite(Complex c) { return std::isfinite(c.real()) && std::isfinite(c.imag()); }

// Accumulate V(x, w) over the w axis for the products g_j = f_j conj(window_j)
// at abscissae y_j. Each cell sums over j in ascending order.
void accumulate_row(std::span<const Complex> g, std::span<const double> y, const Axis& w_axis, double dx,
                    Complex* out) {
  const std::size_t n = g.size();
  std::vector<Complex> phase(n), step(n);
  for (std::size_t j = 0; j < n; ++j) {
    phase[j] = g[j] * std::polar(1.0, -2.0 * kPi * y[j] * w_axis.origin);
    step[j] = std::polar(1.0, -2.0 * kPi * y[j] * w_axis.step);
  }
  for (int iw = 0; iw < w_axis.count; ++iw) {
    Complex sum = 0.0;
    for (std::size_t j = 0; j < n; ++j) sum += phase[j];
    out[iw] = sum * dx;
    // Refresh the phases exactly every 32 steps to bound recurrence drift.
    if ((iw + 1) % 32 == 0) {
      const double w = w_axis.at(iw + 1);
      for (std::size_t j = 0; j < n; ++j) phase[j] = g[j] * std::polar(1.0, -2.0 * kPi * y[j] * w);
    } else {
      for (std::size_t j = 0; j < n; ++j) phase[j] *= step[j];
    }
  }
}

}  // namespace

Axis default_signal_axis() { return {-8.0, 1.0 / 64.0, 1025}; }
Axis default_stft_axis() { return {-6.0, 1.0 / 32.0, 385}; }

SampledSignal::SampledSignal(std::vector<Complex> samples, double x0, double dx)
    : samples_(std::move(samples)), x0_(x0), dx_(dx) {
  if (samples_.size() < 2) throw Error(ErrorKind::InvalidInput, "a signal needs at least two samples");
  if (!std::isfinite(x0) || !std::isfinite(dx) || dx <= 0.0) {
    throw Error(ErrorKind::InvalidInput, "signal spacing must be finite and positive");
  }
  double peak = 0.0;
  for (const auto& s : samples_) {
    if (!is_finite(s)) throw Error(ErrorKind::InvalidInput, "signal samples must be finite");
    peak = std::max(peak, std::abs(s));
  }
  if (std::abs(samples_.front()) >= 1e-8 * peak && peak > 0.0) {
    throw Error(ErrorKind::GridTooNarrow, "signal does not decay at the left end of its grid");
  }
  if (std::abs(samples_.back()) >= 1e-8 * peak && peak > 0.0) {
    throw Error(ErrorKind::GridTooNarrow, "signal does not decay at the right end of its grid");
  }
}

double SampledSignal::norm2() const {
  double sum = 0.0;
  for (const auto& s : samples_) sum += std::norm(s);
  return sum * dx_;
}

double SampledSignal::norm() const { return std::sqrt(norm2()); }

double STFTGrid::energy() const {
  double sum = 0.0;
  for (const auto& v : values) sum += std::norm(v);
  return sum * x_axis.step * w_axis.step;
}

double STFTGrid::max_abs() const {
  double m = 0.0;
  for (const auto& v : values) m = std::max(m, std::abs(v));
  return m;
}

SampledSignal gaussian_window(double x0, double w0, const Axis& axis) {
  if (axis.count < 2 || axis.at(0) > x0 - 5.0 || axis.last() < x0 + 5.0) {
    throw Error(ErrorKind::GridTooNarrow, "grid must cover [x0 - 5, x0 + 5]");
  }
  std::vector<Complex> s(axis.count);
  for (int i = 0; i < axis.count; ++i) {
    const double x = axis.at(i);
    s[i] = std::polar(window_value(x - x0), 2.0 * kPi * w0 * x);
  }
  return SampledSignal(std::move(s), axis.origin, axis.step);
}

std::vector<std::vector<double>> hermite_functions(int count, std::span<const double> xs) {
  std::vector<std::vector<double>> h(std::max(count, 0), std::vector<double>(xs.size()));
  if (count <= 0) return h;
  const double root_two_pi = std::sqrt(2.0 * kPi);
  for (std::size_t j = 0; j < xs.size(); ++j) {
    const double x = xs[j];
    double prev = 0.0;
    double cur = window_value(x);
    h[0][j] = cur;
    for (int k = 0; k + 1 < count; ++k) {
      const double next = std::sqrt(2.0 / (k + 1)) * root_two_pi * x * cur - std::sqrt(double(k) / (k + 1)) * prev;
      prev = cur;
      cur = next;
      h[k + 1][j] = cur;
    }
  }
  return h;
}

SampledSignal hermite_function(int k, const Axis& axis) {
  if (k < 0) throw Error(ErrorKind::InvalidInput, "Hermite index must be nonnegative");
  std::vector<double> xs(axis.count);
  for (int i = 0; i < axis.count; ++i) xs[i] = axis.at(i);
  const auto h = hermite_functions(k + 1, xs);
  return SampledSignal(std::vector<Complex>(h[k].begin(), h[k].end()), axis.origin, axis.step);
}

STFTGrid stft(const SampledSignal& f, const Axis& x_axis, const Axis& w_axis) {
  STFTGrid grid{x_axis, w_axis, std::vector<Complex>(static_cast<std::size_t>(x_axis.count) * w_axis.count)};
  std::vector<Complex> g;
  std::vector<double> y;
  for (int ix = 0; ix < x_axis.count; ++ix) {
    const double x = x_axis.at(ix);
    const int lo = std::max(0, static_cast<int>(std::floor((x - kWindowReach - f.x0()) / f.dx())));
    const int hi = std::min(f.size() - 1, static_cast<int>(std::ceil((x + kWindowReach - f.x0()) / f.dx())));
    g.clear();
    y.clear();
    for (int j = lo; j <= hi; ++j) {
      g.push_back(f[j] * window_value(x - f.x(j)));
      y.push_back(f.x(j));
    }
    accumulate_row(g, y, w_axis, f.dx(), grid.values.data() + static_cast<std::size_t>(ix) * w_axis.count);
  }
  return grid;
}

STFTGrid stft(const SampledSignal& f, const SampledSignal& window, const Axis& x_axis, const Axis& w_axis) {
  const double dx = f.dx();
  if (std::abs(window.dx() - dx) > 1e-12 * dx) {
    throw Error(ErrorKind::InvalidInput, "window and signal must share their sample spacing");
  }
  double peak = 0.0;
  for (const auto& s : window.samples()) peak = std::max(peak, std::abs(s));
  int w_lo = 0, w_hi = window.size() - 1;
  while (w_lo < w_hi && std::abs(window[w_lo]) <= 1e-20 * peak) ++w_lo;
  while (w_hi > w_lo && std::abs(window[w_hi]) <= 1e-20 * peak) --w_hi;

  STFTGrid grid{x_axis, w_axis, std::vector<Complex>(static_cast<std::size_t>(x_axis.count) * w_axis.count)};
  std::vector<Complex> g;
  std::vector<double> y;
  for (int ix = 0; ix < x_axis.count; ++ix) {
    const double x = x_axis.at(ix);
    // window index k of y_j - x is j + shift.
    const double shift_real = (f.x0() - x - window.x0()) / dx;
    const double shift_round = std::round(shift_real);
    if (std::abs(shift_real - shift_round) > 1e-9) {
      throw Error(ErrorKind::InvalidInput, "STFT abscissae must lie on the signal grid");
    }
    const int shift = static_cast<int>(shift_round);
    const int lo = std::max(0, w_lo - shift);
    const int hi = std::min(f.size() - 1, w_hi - shift);
    g.clear();
    y.clear();
    for (int j = lo; j <= hi; ++j) {
      g.push_back(f[j] * std::conj(window[j + shift]));
      y.push_back(f.x(j));
    }
    accumulate_row(g, y, w_axis, dx, grid.values.data() + static_cast<std::size_t>(ix) * w_axis.count);
  }
  return grid;
}

Complex stft_point(const SampledSignal& f, PhasePoint z) {
  const int lo = std::max(0, static_cast<int>(std::floor((z.x - kWindowReach - f.x0()) / f.dx())));
  const int hi = std::min(f.size() - 1, static_cast<int>(std::ceil((z.x + kWindowReach - f.x0()) / f.dx())));
  Complex sum = 0.0;
  for (int j = lo; j <= hi; ++j) {
    const double y = f.x(j);
    sum += f[j] * window_value(z.x - y) * std::polar(1.0, -2.0 * kPi * y * z.w);
  }
  return sum * f.dx();
}

FockCoefficients signal_to_fock(const SampledSignal& f, int basis_size, double residual_tolerance) {
  if (basis_size < 1 || basis_size > 256) throw Error(ErrorKind::InvalidInput, "basis size must be in [1, 256]");
  std::vector<double> xs(f.size());
  for (int j = 0; j < f.size(); ++j) xs[j] = f.x(j);
  const auto h = hermite_functions(basis_size, xs);
  std::vector<Complex> c(basis_size);
  double captured = 0.0;
  for (int k = 0; k < basis_size; ++k) {
    Complex sum = 0.0;
    for (int j = 0; j < f.size(); ++j) sum += f[j] * h[k][j];
    c[k] = sum * f.dx();
    captured += std::norm(c[k]);
  }
  const double total = f.norm2();
  if (total - captured > residual_tolerance * total) {
    throw Error(ErrorKind::BasisTooSmall, "Hermite expansion leaves residual energy above tolerance");
  }
  return FockCoefficients(std::move(c));
}

double bargmann_identity_check(const SampledSignal& f, int basis_size, std::span<const PhasePoint> points) {
  const double scale = f.norm();
  if (scale == 0.0) return 0.0;
  const auto fock = signal_to_fock(f, basis_size, 1.0);
  double worst = 0.0;
  for (const auto& z : points) {
    const double lhs = std::abs(stft_point(f, {z.x, -z.w}));
    const double rhs = std::abs(fock_eval_weighted(fock, z));
    worst = std::max(worst, std::abs(lhs - rhs) / scale);
  }
  return worst;
}

SampledSignal read_signal(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || line.rfind("# signal v1", 0) != 0) {
    throw Error(ErrorKind::InvalidInput, "missing '# signal v1' header");
  }
  std::vector<double> xs;
  std::vector<Complex> values;
  int line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line[0] == '#') continue;
    std::istringstream row(line);
    std::string x_s, re_s, im_s;
    if (!std::getline(row, x_s, ',') || !std::getline(row, re_s, ',') || !std::getline(row, im_s)) {
      throw Error(ErrorKind::InvalidInput, "line " + std::to_string(line_no) + ": expected x,re,im");
    }
    try {
      xs.push_back(std::stod(x_s));
      values.emplace_back(std::stod(re_s), std::stod(im_s));
    } catch (const std::logic_error&) {
      throw Error(ErrorKind::InvalidInput, "line " + std::to_string(line_no) + ": malformed number");
    }
  }
  if (xs.size() < 2) throw Error(ErrorKind::InvalidInput, "a signal needs at least two samples");
  const double dx = (xs.back() - xs.front()) / static_cast<double>(xs.size() - 1);
  for (std::size_t j = 0; j < xs.size(); ++j) {
    if (std::abs(xs[j] - (xs.front() + j * dx)) > 1e-9 * std::max(1.0, std::abs(xs[j]))) {
      throw Error(ErrorKind::InvalidInput, "signal abscissae are not uniformly spaced");
    }
  }
  return SampledSignal(std::move(values), xs.front(), dx);
}

void write_signal(std::ostream& out, const SampledSignal& f) {
  out << "# signal v1\n" << std::setprecision(17);
  for (int j = 0; j < f.size(); ++j) {
    out << f.x(j) << ',' << f[j].real() << ',' << f[j].imag() << '\n';
  }
}

}  // namespace tfconc
