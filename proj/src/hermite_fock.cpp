#include "tfconc/hermite_fock.hpp"

#include <cmath>
#include <iomanip>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>

#include "tfconc/numerics.hpp"
#include "tfconc/regions.hpp"

namespace tfconc {

namespace {

constexpr int kMaxPolyBasis = 256;
constexpr double kHornerRadius = 20.0;

bool all_finite(const std::vector<Complex>& v) {
  for (const auto& c : v) {
    if (!std::isfinite(c.real()) || !std::isfinite(c.imag())) return false;
  }
  return true;
}

// sum_k c_k e_k(z) e^{-shift}, each term formed in log scale.
Complex log_scaled_sum(std::span<const Complex> coeffs, PhasePoint z, double shift) {
  const double r = std::sqrt(z.norm2());
  if (r == 0.0) return coeffs[0] * std::exp(-shift);
  const double log_r = std::log(r);
  const double theta = std::atan2(z.w, z.x);
  Complex sum = 0.0;
  for (int k = 0; k < static_cast<int>(coeffs.size()); ++k) {
    if (coeffs[k] == Complex(0.0)) continue;
    const double log_mag = numerics::log_monomial_scale(k) + k * log_r - shift;
    sum += coeffs[k] * std::polar(std::exp(log_mag), k * theta);
  }
  return sum;
}

}  // namespace

FockCoefficients::FockCoefficients(std::vector<Complex> coeffs) : coeffs_(std::move(coeffs)) {
  if (coeffs_.empty()) throw Error(ErrorKind::InvalidInput, "Fock expansion needs at least one coefficient");
  if (!all_finite(coeffs_)) throw Error(ErrorKind::InvalidInput, "Fock coefficients must be finite");
  for (const auto& c : coeffs_) norm2_ += std::norm(c);
  if (basis_size() <= kMaxPolyBasis) {
    poly_.resize(coeffs_.size());
    for (int k = 0; k < basis_size(); ++k) {
      poly_[k] = coeffs_[k] * std::exp(numerics::log_monomial_scale(k));
    }
  }
}

FockCoefficients FockCoefficients::basis(int k, int basis_size) {
  if (k < 0 || k >= basis_size) throw Error(ErrorKind::InvalidInput, "basis index outside the expansion");
  std::vector<Complex> c(basis_size, 0.0);
  c[k] = 1.0;
  return FockCoefficients(std::move(c));
}

double FockCoefficients::norm() const { return std::sqrt(norm2_); }

FockCoefficients FockCoefficients::scaled(Complex factor) const {
  std::vector<Complex> c(coeffs_);
  for (auto& v : c) v *= factor;
  return FockCoefficients(std::move(c));
}

FockCoefficients FockCoefficients::normalized() const {
  if (norm2_ <= 0.0) throw Error(ErrorKind::ZeroFunction, "cannot normalize the zero function");
  return scaled(1.0 / norm());
}

void FockCoefficients::eval_with_derivative(Complex z, Complex& value, Complex& derivative) const {
  double vr = 0.0, vi = 0.0, dr = 0.0, di = 0.0;
  const double x = z.real(), y = z.imag();
  for (int k = static_cast<int>(poly_.size()) - 1; k >= 0; --k) {
    const double ndr = dr * x - di * y + vr;
    di = dr * y + di * x + vi;
    dr = ndr;
    const double nvr = vr * x - vi * y + poly_[k].real();
    vi = vr * y + vi * x + poly_[k].imag();
    vr = nvr;
  }
  value = {vr, vi};
  derivative = {dr, di};
}

Complex monomial_eval(int k, PhasePoint z) {
  if (k < 0) throw Error(ErrorKind::InvalidInput, "monomial index must be nonnegative");
  if (k == 0) return 1.0;
  const double r = std::sqrt(z.norm2());
  if (r == 0.0) return 0.0;
  const double log_mag = numerics::log_monomial_scale(k) + k * std::log(r);
  return std::polar(std::exp(log_mag), k * std::atan2(z.w, z.x));
}

Complex fock_eval(const FockCoefficients& f, PhasePoint z) {
  if (!f.poly_.empty() && z.norm2() <= kHornerRadius * kHornerRadius) {
    // Real arithmetic; std::complex products carry inf/nan recovery.
    double re = 0.0, im = 0.0;
    for (int k = f.basis_size() - 1; k >= 0; --k) {
      const double next = re * z.x - im * z.w + f.poly_[k].real();
      im = re * z.w + im * z.x + f.poly_[k].imag();
      re = next;
    }
    return {re, im};
  }
  return log_scaled_sum(f.coeffs(), z, 0.0);
}

Complex fock_eval_weighted(const FockCoefficients& f, PhasePoint z) {
  const double shift = 0.5 * kPi * z.norm2();
  if (!f.poly_.empty() && z.norm2() <= kHornerRadius * kHornerRadius) {
    return fock_eval(f, z) * std::exp(-shift);
  }
  return log_scaled_sum(f.coeffs(), z, shift);
}

double fock_density(const FockCoefficients& f, PhasePoint z) {
  return std::norm(fock_eval_weighted(f, z));
}

double fock_norm_radius(const FockCoefficients& f, double p, const FockNormOptions& options) {
  if (!(p >= 1.0)) throw Error(ErrorKind::BadExponent, "Fock norm exponent must be >= 1");
  const int n = f.basis_size();
  // |F(z)|^2 e^{-pi|z|^2} <= ||F||^2 P(Poisson(pi|z|^2) < N); the tail of the
  // p-th power integral in t = pi rho^2 is int_T^inf P(..)^{p/2} dt.
  const auto& gl = numerics::gauss_legendre(16);
  auto tail = [&](double t0) {
    double total = 0.0;
    for (double a = t0;; a += 4.0) {
      double panel = 0.0;
      for (std::size_t i = 0; i < gl.nodes.size(); ++i) {
        const double t = a + 2.0 * (1.0 + gl.nodes[i]);
        panel += 2.0 * gl.weights[i] * std::pow(numerics::poisson_lower(n, t), 0.5 * p);
      }
      total += panel;
      if (a > t0 + 8.0 && panel <= 1e-3 * options.tail_tolerance) break;
      if (a > t0 + 4000.0) break;
    }
    return total;
  };
  for (double r = 0.5;; r += 0.25) {
    if (r > options.max_radius) {
      throw Error(ErrorKind::TailTooLarge, "F^p tail exceeds tolerance inside the maximal radius");
    }
    if (tail(kPi * r * r) <= options.tail_tolerance) return r;
  }
}

double fock_norm(const FockCoefficients& f, double p, const FockNormOptions& options) {
  if (!(p >= 1.0) || !std::isfinite(p)) throw Error(ErrorKind::BadExponent, "Fock norm exponent must be >= 1");
  if (p == 2.0) return f.norm();
  if (f.norm2() == 0.0) return 0.0;
  const double radius = fock_norm_radius(f, p, options);
  const auto rule = quadrature(Region::disk({0.0, 0.0}, radius), options.order);
  double sum = 0.0;
  for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
    sum += rule.weights[i] * std::pow(std::abs(fock_eval_weighted(f, rule.nodes[i])), p);
  }
  return std::pow(sum, 1.0 / p);
}

double coherent_tail(PhasePoint z0, int basis_size) {
  return numerics::poisson_upper(basis_size, kPi * z0.norm2());
}

int coherent_basis_size(PhasePoint z0, double tolerance) {
  int n = 1;
  while (coherent_tail(z0, n) >= tolerance) ++n;
  return n;
}

FockCoefficients coherent_state(const CoherentParams& params, int basis_size) {
  if (basis_size < 1) throw Error(ErrorKind::InvalidInput, "basis size must be positive");
  if (!params.z0.finite()) throw Error(ErrorKind::InvalidInput, "coherent state center must be finite");
  if (coherent_tail(params.z0, basis_size) >= 1e-12) {
    std::ostringstream msg;
    msg << "coherent state at (" << params.z0.x << "," << params.z0.w << ") needs at least "
        << coherent_basis_size(params.z0) << " basis functions, got " << basis_size;
    throw Error(ErrorKind::BasisTooSmall, msg.str());
  }
  const double r = std::sqrt(params.z0.norm2());
  const double theta = std::atan2(params.z0.w, params.z0.x);
  const double shift = 0.5 * kPi * params.z0.norm2();
  std::vector<Complex> c(basis_size, 0.0);
  c[0] = params.amplitude * std::exp(-shift);
  if (r > 0.0) {
    for (int k = 1; k < basis_size; ++k) {
      const double log_mag = numerics::log_monomial_scale(k) + k * std::log(r) - shift;
      c[k] = params.amplitude * std::polar(std::exp(log_mag), -k * theta);
    }
  }
  return FockCoefficients(std::move(c));
}

Complex translate_eval(const FockCoefficients& f, PhasePoint z0, PhasePoint z) {
  const Complex phase = std::exp(kPi * z.z() * std::conj(z0.z()) - 0.5 * kPi * z0.norm2());
  return phase * fock_eval(f, z - z0);
}

FockCoefficients read_fock_coefficients(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || line.rfind("# fock-coeffs v1", 0) != 0) {
    throw Error(ErrorKind::InvalidInput, "missing '# fock-coeffs v1' header");
  }
  std::vector<Complex> coeffs;
  int line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line[0] == '#') continue;
    std::istringstream row(line);
    std::string k_s, re_s, im_s;
    if (!std::getline(row, k_s, ',') || !std::getline(row, re_s, ',') || !std::getline(row, im_s)) {
      throw Error(ErrorKind::InvalidInput, "line " + std::to_string(line_no) + ": expected k,re,im");
    }
    try {
      const int k = std::stoi(k_s);
      if (k != static_cast<int>(coeffs.size())) {
        throw Error(ErrorKind::InvalidInput, "line " + std::to_string(line_no) + ": indices must ascend from 0");
      }
      coeffs.emplace_back(std::stod(re_s), std::stod(im_s));
    } catch (const std::logic_error&) {
      throw Error(ErrorKind::InvalidInput, "line " + std::to_string(line_no) + ": malformed number");
    }
  }
  return FockCoefficients(std::move(coeffs));
}

void write_fock_coefficients(std::ostream& out, const FockCoefficients& f) {
  out << "# fock-coeffs v1\n" << std::setprecision(17);
  for (int k = 0; k < f.basis_size(); ++k) {
    out << k << ',' << f[k].real() << ',' << f[k].imag() << '\n';
  }
}

}  // namespace tfconc
