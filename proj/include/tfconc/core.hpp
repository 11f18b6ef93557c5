#pragma once

#include <complex>
#include <stdexcept>
#include <string>

namespace tfconc {

using Complex = std::complex<double>;

inline constexpr double kPi = 3.14159265358979323846;

/// Point of the time-frequency plane, identified with z = x + i w.
struct PhasePoint {
  double x = 0.0;
  double w = 0.0;

  constexpr PhasePoint() = default;
  constexpr PhasePoint(double x_, double w_) : x(x_), w(w_) {}
  explicit PhasePoint(Complex z) : x(z.real()), w(z.imag()) {}

  Complex z() const { return {x, w}; }
  double norm2() const { return x * x + w * w; }
  bool finite() const;

  friend PhasePoint operator+(PhasePoint a, PhasePoint b) { return {a.x + b.x, a.w + b.w}; }
  friend PhasePoint operator-(PhasePoint a, PhasePoint b) { return {a.x - b.x, a.w - b.w}; }
  friend bool operator==(PhasePoint, PhasePoint) = default;
};

enum class ErrorKind {
  InvalidInput,
  TailTooLarge,
  BasisTooSmall,
  GridTooNarrow,
  NonFiniteMeasure,
  OrderTooLow,
  ZeroFunction,
  BadExponent,
  NotConverged,
};

const char* to_string(ErrorKind kind);

/// Every failure raised by the library carries one of the ErrorKind tags.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what);
  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace tfconc
