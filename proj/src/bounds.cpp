#include "tfconc/bounds.hpp"

#include <cmath>
#include <string>

#include "tfconc/core.hpp"
#include "tfconc/numerics.hpp"

namespace tfconc {

namespace {

void check_dimension(int d) {
  if (d < 1) throw Error(ErrorKind::InvalidInput, "dimension must be a positive integer");
}

void check_measure(double measure) {
  if (!(measure >= 0.0)) throw Error(ErrorKind::InvalidInput, "measure must be nonnegative");
}

void check_eps(double eps, bool allow_one) {
  if (!(eps > 0.0) || eps > 1.0 || (!allow_one && eps == 1.0)) {
    throw Error(ErrorKind::InvalidInput, "eps must lie in (0, 1)");
  }
}

// Golden-section maximization of a concave function on [a, b].
template <class Fn>
double golden_max(Fn&& fn, double a, double b, double tol) {
  const double ratio = 0.5 * (std::sqrt(5.0) - 1.0);
  double c = b - ratio * (b - a);
  double d = a + ratio * (b - a);
  double fc = fn(c);
  double fd = fn(d);
  while (b - a > tol * std::max(1.0, std::abs(c))) {
    if (fc > fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - ratio * (b - a);
      fc = fn(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + ratio * (b - a);
      fd = fn(d);
    }
  }
  return 0.5 * (a + b);
}

}  // namespace

double gamma_ratio(int k, double s) {
  if (k < 1) throw Error(ErrorKind::InvalidInput, "gamma_ratio needs k >= 1");
  if (!(s >= 0.0)) throw Error(ErrorKind::InvalidInput, "gamma_ratio needs s >= 0");
  if (k == 1) return -std::expm1(-s);
  // Same finite sum; below the Poisson mean the dropped terms are summed
  // directly to avoid cancellation in 1 - (...).
  if (s < k) return numerics::poisson_upper(k, s);
  return 1.0 - numerics::poisson_lower(k, s);
}

double unit_ball_volume(int d) {
  check_dimension(d);
  return std::exp(d * std::log(kPi) - std::lgamma(d + 1.0));
}

double symplectic_capacity(int d, double measure) {
  check_dimension(d);
  check_measure(measure);
  if (measure == 0.0) return 0.0;
  return kPi * std::pow(measure / unit_ball_volume(d), 1.0 / d);
}

double faber_krahn_bound(int d, double measure) {
  if (d == 1) {
    check_measure(measure);
    return -std::expm1(-measure);
  }
  return gamma_ratio(d, symplectic_capacity(d, measure));
}

double psi(int d, double eps) {
  check_dimension(d);
  check_eps(eps, true);
  if (eps == 1.0) return 0.0;
  if (d == 1) return -std::log(eps);
  // Compare on whichever side of 1/2 keeps the target well conditioned.
  const bool upper = eps > 0.5;
  auto below_target = [&](double s) {
    return upper ? gamma_ratio(d, s) < 1.0 - eps : numerics::poisson_lower(d, s) > eps;
  };
  double lo = 0.0;
  double hi = 1.0;
  while (below_target(hi)) {
    lo = hi;
    hi *= 2.0;
    if (hi > 1e6) throw Error(ErrorKind::NotConverged, "psi bracket did not close");
  }
  while (hi - lo > 1e-15 * std::max(1.0, hi)) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    if (below_target(mid)) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

double min_volume(int d, double eps) {
  check_eps(eps, true);
  const double s = psi(d, eps);
  return std::exp(d * std::log(s) - std::lgamma(d + 1.0));
}

double lieb_local_bound(double p, double measure) {
  if (!(p >= 2.0) || !std::isfinite(p)) throw Error(ErrorKind::BadExponent, "local Lieb bound needs p >= 2");
  check_measure(measure);
  return -(2.0 / p) * std::expm1(-0.5 * p * measure);
}

double lp_bound(double p, double measure) {
  if (!(p >= 1.0) || !std::isfinite(p)) throw Error(ErrorKind::BadExponent, "L^p bound needs p >= 1");
  check_measure(measure);
  return -std::expm1(-0.5 * p * measure);
}

double lp_min_volume(double p, double eps) {
  if (!(p >= 1.0) || !std::isfinite(p)) throw Error(ErrorKind::BadExponent, "L^p volume bound needs p >= 1");
  check_eps(eps, true);
  return -(2.0 / p) * std::log(eps);
}

double prior_art_bound(int d, double eps) {
  check_dimension(d);
  check_eps(eps, false);
  // With q = 1/(p - 2) the log objective (2q + 1) log(1 - eps) + 2dq log(1 + 1/(2q))
  // is concave in q.
  const double log_keep = std::log1p(-eps);
  auto log_objective = [&](double q) { return (2.0 * q + 1.0) * log_keep + 2.0 * d * q * std::log1p(0.5 / q); };
  const double q_lo = 1.0 / (1e4 - 2.0);
  const double q_hi = 1e6;
  const double q = golden_max(log_objective, q_lo, q_hi, 1e-13);
  double best = log_objective(q);
  best = std::max(best, log_objective(q_lo));
  best = std::max(best, log_objective(q_hi));
  return std::exp(best);
}

double weak_bound(double eps) {
  if (!(eps >= 0.0) || eps > 1.0) throw Error(ErrorKind::InvalidInput, "eps must lie in [0, 1]");
  return 1.0 - eps;
}

}  // namespace tfconc
