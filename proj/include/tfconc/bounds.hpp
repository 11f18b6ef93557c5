#pragma once

namespace tfconc {

/// gamma(k, s) / (k-1)! = 1 - e^{-s} sum_{j<k} s^j / j!, for k >= 1, s >= 0.
double gamma_ratio(int k, double s);

/// Volume of the unit ball in R^{2d}, pi^d / d!.
double unit_ball_volume(int d);

/// pi (measure / unit_ball_volume(d))^{1/d}: the capacity of the ball with the given volume.
double symplectic_capacity(int d, double measure);

/// Largest possible concentration of a unit-norm function on a set of the
/// given measure in R^{2d}: gamma_ratio(d, symplectic_capacity(d, measure)).
double faber_krahn_bound(int d, double measure);

/// Inverse of s -> e^{-s} sum_{j<d} s^j / j! on (0, 1].
double psi(int d, double eps);

/// Smallest measure that can hold a fraction 1 - eps of a unit-norm function's energy.
double min_volume(int d, double eps);

/// (2/p)(1 - e^{-p measure / 2}), p >= 2.
double lieb_local_bound(double p, double measure);

/// 1 - e^{-p measure / 2}, p >= 1.
double lp_bound(double p, double measure);

/// (2/p) log(1/eps).
double lp_min_volume(double p, double eps);

/// sup_{p > 2} (1 - eps)^{p/(p-2)} (p/2)^{2d/(p-2)}: the older volume bound
/// derived from Lieb's inequality, used as a baseline.
double prior_art_bound(int d, double eps);

/// 1 - eps.
double weak_bound(double eps);

}  // namespace tfconc
