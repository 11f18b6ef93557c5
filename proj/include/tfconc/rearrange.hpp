#pragma once

#include <span>
#include <vector>

#include "tfconc/core.hpp"
#include "tfconc/hermite_fock.hpp"

namespace tfconc {

/// u(z) = |F(z)|^2 e^{-pi|z|^2} for a unit-norm Fock function F.
class DensityField {
 public:
  /// Normalizes F when its norm differs from 1 by more than 1e-10.
  explicit DensityField(const FockCoefficients& f);

  double operator()(PhasePoint z) const;
  /// u and its partial derivative in the w direction.
  double value_and_dw(PhasePoint z, double& dw) const;

  /// u and its gradient.
  double value_and_gradient(PhasePoint z, double& dx, double& dw) const;

  double max_value() const { return max_value_; }
  const std::vector<PhasePoint>& local_maxima() const { return maxima_; }
  const std::vector<PhasePoint>& local_minima() const { return minima_; }
  const std::vector<PhasePoint>& saddle_points() const { return saddles_; }
  const FockCoefficients& coefficients() const { return f_; }

  /// Radius outside which u < t, from u(z) <= P(Pois(pi|z|^2) < N).
  /// Throws TailTooLarge beyond radius 40.
  double certified_radius(double t) const;

  /// Abscissae where the level curve {u = t} has a vertical tangent, i.e.
  /// where the chord structure of {u > t} on vertical lines changes.
  std::vector<double> vertical_tangencies(double t) const;

  /// Radius of the disk on which levels down to 1e-14 are resolved.
  double resolved_radius() const { return resolved_radius_; }

 private:
  // Critical points of w -> u(x, w) on one vertical line.
  struct LineExtremum {
    double w;
    double value;
    bool peak;
  };
  struct ExtremaLine {
    double x;
    std::vector<LineExtremum> extrema;
  };

  std::vector<LineExtremum> line_extrema(double x) const;
  bool track_extremum(double x, double w_guess, bool peak, LineExtremum& out) const;
  double locate_tangency(const ExtremaLine& a, const LineExtremum& ea, const ExtremaLine& b,
                         const LineExtremum& eb, double t) const;

  FockCoefficients f_;
  double max_value_ = 0.0;
  double resolved_radius_ = 0.0;
  std::vector<PhasePoint> maxima_;
  std::vector<PhasePoint> minima_;
  std::vector<PhasePoint> saddles_;
  std::vector<ExtremaLine> ridges_;
};

DensityField density(const FockCoefficients& f);

/// Quantities of the super-level set {u > t}.
struct LevelSetStats {
  double t = 0.0;
  double measure = 0.0;             // mu(t)
  double integral = 0.0;            // int_{u > t} u
  double measure_derivative = 0.0;  // d mu / dt (negative)
};

LevelSetStats level_set(const DensityField& u, double t);

/// mu(t) = |{u > t}| for every t in (0, max u].
std::vector<double> distribution_function(const DensityField& u, std::span<const double> t_grid);

struct RearrangementProfile {
  std::vector<double> s_grid;
  std::vector<double> u_star;
  std::vector<double> I_vals;
  std::vector<double> t_grid;
  std::vector<double> mu_vals;
};

/// 0, then geometric from 1e-4 up to min(1, s_max), then uniform up to s_max; n nodes.
std::vector<double> profile_s_grid(double s_max, int n);

/// u*(s) by inverting mu on each s node and I(s) = int_{u > u*(s)} u.
/// Requires 0 <= s_max <= 20 and n >= 64; s_max = 0 gives an empty profile.
RearrangementProfile rearrangement_profile(const DensityField& u, double s_max, int n);

struct DifferentialReport {
  /// Largest decrease of e^s u*(s) = e^s I'(s) between consecutive nodes,
  /// relative to max(1, e^s u*(s)).
  double max_violation_exp_monotone = 0.0;
  /// Largest excess of G(sigma) = I(-log sigma) over the chord through its
  /// neighbours on the sigma grid.
  double max_convexity_violation_G = 0.0;
  /// Largest excess of I(s) over 1 - e^{-s}.
  double max_I_bound_violation = 0.0;
};

DifferentialReport verify_differential_structure(const RearrangementProfile& profile);

/// int_0^{max u} mu(t) dt, which equals int u = 1.
double layer_cake_integral(const DensityField& u, double tolerance = 1e-6);

}  // namespace tfconc
