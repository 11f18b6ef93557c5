#include "tfconc/rearrange.hpp"

#include <algorithm>
#include <cmath>

#include "tfconc/numerics.hpp"
#include "tfconc/regions.hpp"

namespace tfconc {

namespace {

constexpr double kExtremaGridStep = 0.05;
constexpr double kLineSampleStep = 0.05;
constexpr double kRidgeSpacing = 0.01;
constexpr double kTrackStep = 0.0125;
constexpr int kChordOrder = 20;
constexpr double kChordPiece = 1.0;
constexpr double kMaxPanelWidth = 2.0;
constexpr double kCriticalBand = 0.5;
constexpr double kPanelTolerance = 1e-7;
constexpr int kMaxPanelDepth = 12;
constexpr double kLowestLevel = 1e-14;

// Compass search from `start`; sign = +1 climbs, -1 descends.
PhasePoint compass_refine(const DensityField& u, PhasePoint start, double sign) {
  static const double dirs[8][2] = {{1, 0}, {-1, 0}, {0, 1}, {0, -1}, {1, 1}, {1, -1}, {-1, 1}, {-1, -1}};
  PhasePoint p = start;
  double best = sign * u(p);
  double h = 0.5 * kExtremaGridStep;
  while (h > 1e-10) {
    bool moved = false;
    for (const auto& d : dirs) {
      const PhasePoint q{p.x + h * d[0], p.w + h * d[1]};
      const double v = sign * u(q);
      if (v > best) {
        best = v;
        p = q;
        moved = true;
      }
    }
    if (!moved) h *= 0.5;
  }
  return p;
}

// Newton on grad u = 0 with a central-difference Hessian.
bool newton_critical(const DensityField& u, PhasePoint& p) {
  const double h = 1e-6;
  for (int it = 0; it < 40; ++it) {
    double gx, gw;
    u.value_and_gradient(p, gx, gw);
    double ax, aw, bx, bw, cx, cw, dx, dw;
    u.value_and_gradient({p.x + h, p.w}, ax, aw);
    u.value_and_gradient({p.x - h, p.w}, bx, bw);
    u.value_and_gradient({p.x, p.w + h}, cx, cw);
    u.value_and_gradient({p.x, p.w - h}, dx, dw);
    const double hxx = (ax - bx) / (2 * h), hxw = 0.5 * ((aw - bw) + (cx - dx)) / (2 * h);
    const double hww = (cw - dw) / (2 * h);
    const double det = hxx * hww - hxw * hxw;
    if (det == 0.0 || !std::isfinite(det)) return false;
    const double sx = (hww * gx - hxw * gw) / det;
    const double sw = (hxx * gw - hxw * gx) / det;
    p.x -= sx;
    p.w -= sw;
    if (std::hypot(sx, sw) < 1e-12) return true;
  }
  return false;
}

void push_unique(std::vector<PhasePoint>& points, PhasePoint p) {
  for (const auto& q : points) {
    if (std::hypot(p.x - q.x, p.w - q.w) < 1e-6) return;
  }
  points.push_back(p);
}

// Root of g on [a, b] with g(a) g(b) < 0 (Illinois variant of regula falsi).
template <class Fn>
double bracketed_root(Fn&& g, double a, double b, double ga, double gb, double tol = 1e-14) {
  int side = 0;
  for (int it = 0; it < 200 && std::abs(b - a) > tol * std::max(1.0, std::abs(a)); ++it) {
    double c = (a * gb - b * ga) / (gb - ga);
    if (!(c > std::min(a, b) && c < std::max(a, b))) c = 0.5 * (a + b);
    const double gc = g(c);
    if (gc == 0.0) return c;
    if ((gc > 0.0) == (gb > 0.0)) {
      b = c;
      gb = gc;
      if (side == -1) ga *= 0.5;
      side = -1;
    } else {
      a = c;
      ga = gc;
      if (side == 1) gb *= 0.5;
      side = 1;
    }
  }
  return 0.5 * (a + b);
}

// Extremum of g on [a, b] by golden section; sign = +1 for a maximum.
template <class Fn>
double golden_extremum(Fn&& g, double a, double b, double sign, double& value) {
  const double ratio = 0.5 * (std::sqrt(5.0) - 1.0);
  double c = b - ratio * (b - a);
  double d = a + ratio * (b - a);
  double gc = sign * g(c);
  double gd = sign * g(d);
  for (int it = 0; it < 60 && b - a > 1e-12; ++it) {
    if (gc > gd) {
      b = d;
      d = c;
      gd = gc;
      c = b - ratio * (b - a);
      gc = sign * g(c);
    } else {
      a = c;
      c = d;
      gc = gd;
      d = a + ratio * (b - a);
      gd = sign * g(d);
    }
  }
  const double x = 0.5 * (a + b);
  value = g(x);
  return x;
}

// Intervals of {w : u(x, w) > t} on the vertical line at x, within the disk of radius r.
std::vector<ChordInterval> level_chords(const DensityField& u, double t, double x, double r) {
  const double reach2 = r * r - x * x;
  if (reach2 <= 0.0) return {};
  const double reach = std::sqrt(reach2);
  const int m = std::max(4, static_cast<int>(std::ceil(2.0 * reach / kLineSampleStep)));
  const double h = 2.0 * reach / m;
  auto g = [&](double w) { return u({x, w}) - t; };
  auto at = [&](int i) { return -reach + i * h; };
  std::vector<double> v(m + 1);
  for (int i = 0; i <= m; ++i) v[i] = g(at(i));

  std::vector<double> roots;
  for (int i = 0; i < m; ++i) {
    if ((v[i] > 0.0) != (v[i + 1] > 0.0)) roots.push_back(bracketed_root(g, at(i), at(i + 1), v[i], v[i + 1]));
  }
  // Excursions across t that fall between samples. Strict on the left so
  // that a flat pair of samples yields one candidate.
  for (int i = 1; i < m; ++i) {
    const bool peak = v[i] > v[i - 1] && v[i] >= v[i + 1] && v[i] <= 0.0;
    const bool dip = v[i] < v[i - 1] && v[i] <= v[i + 1] && v[i] > 0.0;
    if (!peak && !dip) continue;
    auto dw = [&](double w) {
      double d = 0.0;
      u.value_and_dw({x, w}, d);
      return d;
    };
    const double da = dw(at(i - 1));
    const double db = dw(at(i + 1));
    double w = 0.0;
    if ((da > 0.0) != (db > 0.0)) {
      w = bracketed_root(dw, at(i - 1), at(i + 1), da, db, 1e-13);
    } else {
      double unused = 0.0;
      w = golden_extremum(g, at(i - 1), at(i + 1), peak ? 1.0 : -1.0, unused);
    }
    const double ext = g(w);
    if ((peak && ext > 0.0) || (dip && ext <= 0.0)) {
      roots.push_back(bracketed_root(g, at(i - 1), w, v[i - 1], ext));
      roots.push_back(bracketed_root(g, w, at(i + 1), ext, v[i + 1]));
    }
  }
  std::sort(roots.begin(), roots.end());
  std::vector<ChordInterval> out;
  for (std::size_t k = 0; k + 1 < roots.size(); k += 2) {
    if (roots[k + 1] > roots[k]) out.push_back({roots[k], roots[k + 1], 0, 0});
  }
  return out;
}

}  // namespace

DensityField::DensityField(const FockCoefficients& f) : f_(f) {
  if (f.basis_size() > 256) throw Error(ErrorKind::InvalidInput, "density fields support at most 256 coefficients");
  if (f.norm2() == 0.0) throw Error(ErrorKind::ZeroFunction, "density of the zero function is undefined");
  if (std::abs(f.norm() - 1.0) > 1e-10) f_ = f.normalized();
  resolved_radius_ = 1.02 * certified_radius(kLowestLevel) + 0.05;

  // Local extrema from a grid scan. Away from the zeros of F, log u is
  // superharmonic, so the local minima are exactly the zeros.
  const int n = static_cast<int>(std::ceil(resolved_radius_ / kExtremaGridStep));
  const int side = 2 * n + 1;
  std::vector<double> grid(static_cast<std::size_t>(side) * side);
  auto idx = [&](int i, int j) { return static_cast<std::size_t>(i) * side + j; };
  auto point = [&](int i, int j) { return PhasePoint{(i - n) * kExtremaGridStep, (j - n) * kExtremaGridStep}; };
  for (int i = 0; i < side; ++i) {
    for (int j = 0; j < side; ++j) {
      grid[idx(i, j)] = (*this)(point(i, j));
    }
  }
  for (int i = 1; i + 1 < side; ++i) {
    for (int j = 1; j + 1 < side; ++j) {
      const double c = grid[idx(i, j)];
      bool is_max = c > kLowestLevel;
      bool is_min = true;
      // Saddles: the ring of neighbours crosses c at least four times.
      static const int ring[8][2] = {{1, 0}, {1, 1}, {0, 1}, {-1, 1}, {-1, 0}, {-1, -1}, {0, -1}, {1, -1}};
      int crossings = 0;
      for (int q = 0; q < 8; ++q) {
        const bool a = grid[idx(i + ring[q][0], j + ring[q][1])] > c;
        const bool b = grid[idx(i + ring[(q + 1) % 8][0], j + ring[(q + 1) % 8][1])] > c;
        if (a != b) ++crossings;
      }
      if (crossings >= 4 && c > kLowestLevel) {
        PhasePoint p = point(i, j);
        if (newton_critical(*this, p) && std::hypot(p.x - point(i, j).x, p.w - point(i, j).w) < 2 * kExtremaGridStep) {
          push_unique(saddles_, p);
        }
      }
      for (int di = -1; di <= 1; ++di) {
        for (int dj = -1; dj <= 1; ++dj) {
          if (di == 0 && dj == 0) continue;
          const double nb = grid[idx(i + di, j + dj)];
          if (nb > c) is_max = false;
          if (nb < c) is_min = false;
        }
      }
      if (is_max) push_unique(maxima_, compass_refine(*this, point(i, j), 1.0));
      if (is_min) {
        const PhasePoint p = compass_refine(*this, point(i, j), -1.0);
        if ((*this)(p) < kLowestLevel && std::hypot(p.x - point(i, j).x, p.w - point(i, j).w) < 2 * kExtremaGridStep) {
          push_unique(minima_, p);
        }
      }
    }
  }
  for (const auto& p : maxima_) max_value_ = std::max(max_value_, (*this)(p));

  // Ridge curves {du/dw = 0} sampled on fine vertical lines.
  const int lines = static_cast<int>(std::ceil(2.0 * resolved_radius_ / kRidgeSpacing));
  for (int k = 0; k <= lines; ++k) {
    const double x = -resolved_radius_ + 2.0 * resolved_radius_ * k / lines;
    ridges_.push_back({x, line_extrema(x)});
  }
}

double DensityField::operator()(PhasePoint z) const { return fock_density(f_, z); }

double DensityField::value_and_dw(PhasePoint z, double& dw) const {
  Complex value, derivative;
  f_.eval_with_derivative(z.z(), value, derivative);
  const double weight = std::exp(-kPi * z.norm2());
  const double mod2 = std::norm(value);
  dw = weight * (-2.0 * std::imag(std::conj(value) * derivative) - 2.0 * kPi * z.w * mod2);
  return mod2 * weight;
}

double DensityField::value_and_gradient(PhasePoint z, double& dx, double& dw) const {
  Complex value, derivative;
  f_.eval_with_derivative(z.z(), value, derivative);
  const double weight = std::exp(-kPi * z.norm2());
  const double mod2 = std::norm(value);
  const Complex cross = std::conj(value) * derivative;
  dx = weight * (2.0 * cross.real() - 2.0 * kPi * z.x * mod2);
  dw = weight * (-2.0 * cross.imag() - 2.0 * kPi * z.w * mod2);
  return mod2 * weight;
}

double DensityField::certified_radius(double t) const {
  if (!(t > 0.0)) throw Error(ErrorKind::InvalidInput, "level must be positive");
  const int n = f_.basis_size();
  auto bound = [&](double r) { return numerics::poisson_lower(n, kPi * r * r); };
  double lo = 0.0;
  double hi = 0.25;
  while (bound(hi) >= t) {
    lo = hi;
    hi += 0.25;
    if (hi > 40.0) throw Error(ErrorKind::TailTooLarge, "level set is not certified inside radius 40");
  }
  for (int it = 0; it < 50; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (bound(mid) >= t) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return hi;
}

std::vector<DensityField::LineExtremum> DensityField::line_extrema(double x) const {
  std::vector<LineExtremum> out;
  const double reach2 = resolved_radius_ * resolved_radius_ - x * x;
  if (reach2 <= 0.0) return out;
  const double reach = std::sqrt(reach2);
  const int m = std::max(4, static_cast<int>(std::ceil(2.0 * reach / kLineSampleStep)));
  const double h = 2.0 * reach / m;
  auto dw = [&](double w) {
    double d = 0.0;
    value_and_dw({x, w}, d);
    return d;
  };
  double prev = dw(-reach);
  for (int i = 1; i <= m; ++i) {
    const double w1 = -reach + i * h;
    const double cur = dw(w1);
    if ((prev > 0.0) != (cur > 0.0)) {
      const double w = bracketed_root(dw, w1 - h, w1, prev, cur, 1e-13);
      out.push_back({w, (*this)({x, w}), prev > 0.0});
    }
    prev = cur;
  }
  return out;
}

bool DensityField::track_extremum(double x, double w_guess, bool peak, LineExtremum& out) const {
  auto dw = [&](double w) {
    double d = 0.0;
    value_and_dw({x, w}, d);
    return d;
  };
  // Nearest sign change of the right orientation in a window around the guess.
  const int half = 8;
  double best_dist = 1e300;
  double prev_w = w_guess - half * kTrackStep;
  double prev = dw(prev_w);
  for (int i = -half + 1; i <= half; ++i) {
    const double w = w_guess + i * kTrackStep;
    const double cur = dw(w);
    const bool falling = prev > 0.0 && !(cur > 0.0);
    const bool rising = !(prev > 0.0) && cur > 0.0;
    if ((peak && falling) || (!peak && rising)) {
      const double root = bracketed_root(dw, prev_w, w, prev, cur, 1e-13);
      if (std::abs(root - w_guess) < best_dist) {
        best_dist = std::abs(root - w_guess);
        out = {root, (*this)({x, root}), peak};
      }
    }
    prev_w = w;
    prev = cur;
  }
  return best_dist < 1e300;
}

double DensityField::locate_tangency(const ExtremaLine& a, const LineExtremum& ea, const ExtremaLine& b,
                                     const LineExtremum& eb, double t) const {
  // Regula falsi in x on (value of the tracked extremum) - t.
  double xa = a.x, xb = b.x;
  double wa = ea.w, wb = eb.w;
  double ga = ea.value - t, gb = eb.value - t;
  int side = 0;
  for (int it = 0; it < 100 && xb - xa > 1e-12; ++it) {
    double xc = (xa * gb - xb * ga) / (gb - ga);
    if (!(xc > xa && xc < xb)) xc = 0.5 * (xa + xb);
    const double guess = wa + (wb - wa) * (xc - xa) / (xb - xa);
    LineExtremum ec;
    if (!track_extremum(xc, guess, ea.peak, ec)) break;
    const double gc = ec.value - t;
    if (gc == 0.0) return xc;
    if ((gc > 0.0) == (gb > 0.0)) {
      xb = xc;
      wb = ec.w;
      gb = gc;
      if (side == -1) ga *= 0.5;
      side = -1;
    } else {
      xa = xc;
      wa = ec.w;
      ga = gc;
      if (side == 1) gb *= 0.5;
      side = 1;
    }
  }
  return 0.5 * (xa + xb);
}

std::vector<double> DensityField::vertical_tangencies(double t) const {
  std::vector<double> out;
  for (std::size_t k = 0; k + 1 < ridges_.size(); ++k) {
    const auto& a = ridges_[k];
    const auto& b = ridges_[k + 1];
    bool same_pattern = a.extrema.size() == b.extrema.size();
    for (std::size_t i = 0; same_pattern && i < a.extrema.size(); ++i) {
      same_pattern = a.extrema[i].peak == b.extrema[i].peak;
    }
    for (std::size_t i = 0; i < a.extrema.size(); ++i) {
      const auto& ea = a.extrema[i];
      const LineExtremum* eb = nullptr;
      if (same_pattern) {
        eb = &b.extrema[i];
      } else {
        double best = 4.0 * kTrackStep;
        for (const auto& cand : b.extrema) {
          if (cand.peak == ea.peak && std::abs(cand.w - ea.w) < best) {
            best = std::abs(cand.w - ea.w);
            eb = &cand;
          }
        }
      }
      if (eb && (ea.value > t) != (eb->value > t)) out.push_back(locate_tangency(a, ea, b, *eb, t));
    }
  }
  // Islands around maxima and holes around zeros narrower than the ridge
  // spacing fall between two ridge lines.
  for (const auto* points : {&maxima_, &minima_}) {
    const bool peak = points == &maxima_;
    for (const auto& p : *points) {
      const LineExtremum centre{p.w, (*this)(p), peak};
      if ((centre.value > t) != peak) continue;
      for (double dir : {-1.0, 1.0}) {
        ExtremaLine inner{p.x, {centre}};
        for (double h = 1e-4; h < 4.0 * kRidgeSpacing; h *= 2.0) {
          ExtremaLine outer{p.x + dir * h, {}};
          LineExtremum e;
          if (!track_extremum(outer.x, inner.extrema[0].w, peak, e)) break;
          outer.extrema.push_back(e);
          if ((e.value > t) != (centre.value > t)) {
            out.push_back(dir > 0 ? locate_tangency(inner, inner.extrema[0], outer, e, t)
                                  : locate_tangency(outer, e, inner, inner.extrema[0], t));
            break;
          }
          inner = outer;
        }
      }
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

DensityField density(const FockCoefficients& f) { return DensityField(f); }

namespace {

struct PanelSums {
  double measure = 0.0;
  double integral = 0.0;
  double measure_derivative = 0.0;

  PanelSums& operator+=(const PanelSums& o) {
    measure += o.measure;
    integral += o.integral;
    measure_derivative += o.measure_derivative;
    return *this;
  }
};

// Gauss-Kronrod 7-15 abscissae and weights on [0, 1]; the odd abscissae
// (and 0) carry the Gauss rule.
constexpr double kKronrodNodes[8] = {0.991455371120812639, 0.949107912342758525, 0.864864423359769073,
                                     0.741531185599394440, 0.586087235467691130, 0.405845151377397167,
                                     0.207784955007898468, 0.0};
constexpr double kKronrodWeights[8] = {0.022935322010529225, 0.063092092629978553, 0.104790010322250184,
                                       0.140653259715525919, 0.169004726639267903, 0.190350578064785410,
                                       0.204432940075298892, 0.209482141084727828};
constexpr double kGaussWeights[4] = {0.129484966168869693, 0.279705391489276668, 0.381830050505118945,
                                     0.417959183673469388};

struct PanelEstimate {
  PanelSums kronrod;
  PanelSums gauss;
};

PanelSums line_sums(const DensityField& u, double t, double r, double x, double weight) {
  const auto& cg = numerics::gauss_legendre(kChordOrder);
  PanelSums sums;
  for (const auto& c : level_chords(u, t, x, r)) {
    sums.measure += weight * (c.hi - c.lo);
    const int pieces = std::max(1, static_cast<int>(std::ceil((c.hi - c.lo) / kChordPiece)));
    const double piece = (c.hi - c.lo) / pieces;
    double chord_integral = 0.0;
    for (int k = 0; k < pieces; ++k) {
      const double centre = c.lo + (k + 0.5) * piece;
      for (int j = 0; j < kChordOrder; ++j) chord_integral += cg.weights[j] * u({x, centre + 0.5 * piece * cg.nodes[j]});
    }
    sums.integral += weight * 0.5 * piece * chord_integral;
    double dw_lo = 0.0, dw_hi = 0.0;
    u.value_and_dw({x, c.lo}, dw_lo);
    u.value_and_dw({x, c.hi}, dw_hi);
    sums.measure_derivative -= weight * (1.0 / std::abs(dw_lo) + 1.0 / std::abs(dw_hi));
  }
  return sums;
}

void add_scaled(PanelSums& acc, const PanelSums& s, double w) {
  acc.measure += w * s.measure;
  acc.integral += w * s.integral;
  acc.measure_derivative += w * s.measure_derivative;
}

// Gauss-Kronrod in theta over [a, b] with x = mid - half cos(theta); the
// chord lengths have square-root ends at vertical tangencies.
PanelEstimate level_panel(const DensityField& u, double t, double r, double a, double b) {
  const double mid = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  PanelEstimate est;
  for (int i = 0; i < 15; ++i) {
    const int k = i < 8 ? i : 14 - i;
    const double node = i < 8 ? -kKronrodNodes[k] : kKronrodNodes[k];
    const double theta = 0.5 * kPi * (1.0 + node);
    const double jacobian = 0.25 * kPi * (b - a) * std::sin(theta);
    const PanelSums line = line_sums(u, t, r, mid - half * std::cos(theta), 1.0);
    add_scaled(est.kronrod, line, kKronrodWeights[k] * jacobian);
    if (k % 2 == 1) add_scaled(est.gauss, line, kGaussWeights[k / 2] * jacobian);
  }
  return est;
}

// Bisects until the embedded Gauss rule agrees with the Kronrod rule. Chord
// lengths are nearly singular where the level curve passes close to a
// critical point or a fold of the ridge set.
PanelSums adaptive_panel(const DensityField& u, double t, double r, double a, double b, const PanelEstimate& est,
                         int depth) {
  const bool settled =
      std::abs(est.kronrod.measure - est.gauss.measure) <= kPanelTolerance * std::max(1.0, std::abs(est.kronrod.measure)) &&
      std::abs(est.kronrod.integral - est.gauss.integral) <= kPanelTolerance;
  if (settled || depth >= kMaxPanelDepth) return est.kronrod;
  const double m = 0.5 * (a + b);
  PanelSums out = adaptive_panel(u, t, r, a, m, level_panel(u, t, r, a, m), depth + 1);
  out += adaptive_panel(u, t, r, m, b, level_panel(u, t, r, m, b), depth + 1);
  return out;
}

}  // namespace

LevelSetStats level_set(const DensityField& u, double t) {
  if (!(t > 0.0)) throw Error(ErrorKind::InvalidInput, "level must be positive");
  LevelSetStats stats;
  stats.t = t;
  if (t >= u.max_value()) return stats;
  if (t < kLowestLevel) throw Error(ErrorKind::TailTooLarge, "level below the resolved range");
  // Margin so that u < t holds strictly on the boundary of the swept disk.
  const double r = std::min(1.02 * u.certified_radius(t) + 0.05, u.resolved_radius());
  std::vector<double> inner = u.vertical_tangencies(t);
  for (const auto* points : {&u.local_maxima(), &u.local_minima(), &u.saddle_points()}) {
    for (const auto& p : *points) {
      if (std::abs(u(p) - t) < kCriticalBand * t) inner.push_back(p.x);
    }
  }
  std::sort(inner.begin(), inner.end());
  std::vector<double> cuts{-r};
  for (double x : inner) {
    if (x > -r && x < r && x - cuts.back() > 1e-12) cuts.push_back(x);
  }
  if (r - cuts.back() <= 1e-12) cuts.pop_back();
  cuts.push_back(r);

  PanelSums total;
  for (std::size_t p = 0; p + 1 < cuts.size(); ++p) {
    const int pieces = static_cast<int>(std::ceil((cuts[p + 1] - cuts[p]) / kMaxPanelWidth));
    for (int k = 0; k < pieces; ++k) {
      const double a = cuts[p] + (cuts[p + 1] - cuts[p]) * k / pieces;
      const double b = cuts[p] + (cuts[p + 1] - cuts[p]) * (k + 1) / pieces;
      total += adaptive_panel(u, t, r, a, b, level_panel(u, t, r, a, b), 0);
    }
  }
  stats.measure = total.measure;
  stats.integral = total.integral;
  stats.measure_derivative = total.measure_derivative;
  return stats;
}

std::vector<double> distribution_function(const DensityField& u, std::span<const double> t_grid) {
  std::vector<double> out;
  out.reserve(t_grid.size());
  for (double t : t_grid) {
    if (!(t > 0.0) || t > u.max_value() * (1.0 + 1e-12)) {
      throw Error(ErrorKind::InvalidInput, "levels must lie in (0, max u]");
    }
    out.push_back(level_set(u, t).measure);
  }
  return out;
}

std::vector<double> profile_s_grid(double s_max, int n) {
  std::vector<double> s{0.0};
  if (s_max <= 0.0 || n < 2) return s;
  const double knee = std::min(1.0, s_max);
  const double first = std::min(1e-4, 0.5 * knee);
  const int geometric = s_max > 1.0 ? std::max(2, n / 4) : n - 1;
  const int linear = n - 1 - geometric;
  for (int i = 0; i < geometric; ++i) {
    s.push_back(first * std::pow(knee / first, double(i) / (geometric - 1)));
  }
  for (int i = 1; i <= linear; ++i) s.push_back(knee + (s_max - knee) * i / linear);
  return s;
}

RearrangementProfile rearrangement_profile(const DensityField& u, double s_max, int n) {
  if (!(s_max >= 0.0) || s_max > 20.0) throw Error(ErrorKind::InvalidInput, "s_max must lie in [0, 20]");
  if (n < 64) throw Error(ErrorKind::InvalidInput, "profile needs at least 64 nodes");
  RearrangementProfile profile;
  if (s_max == 0.0) return profile;

  const auto s_grid = profile_s_grid(s_max, n);
  const double top = u.max_value();
  profile.s_grid.push_back(0.0);
  profile.u_star.push_back(top);
  profile.I_vals.push_back(0.0);
  profile.t_grid.push_back(top);
  profile.mu_vals.push_back(0.0);

  LevelSetStats prev;
  prev.t = top;
  double prev_s = 0.0;
  for (std::size_t i = 1; i < s_grid.size(); ++i) {
    const double s = s_grid[i];
    const double step = s - prev_s;
    // e^s u*(s) is nondecreasing, so u*(s) >= u*(s_prev) e^{-(s - s_prev)}.
    double log_lo = std::log(prev.t) - step - 1e-9;
    double log_hi = std::log(prev.t);
    double guess = log_lo;
    if (prev.measure_derivative < 0.0) guess = log_hi - step / (prev.t * -prev.measure_derivative);
    if (!(guess > log_lo && guess < log_hi)) guess = 0.5 * (log_lo + log_hi);

    LevelSetStats at = level_set(u, std::exp(guess));
    for (int it = 0; it < 100; ++it) {
      const double miss = at.measure - s;
      if (std::abs(miss) <= 1e-9 * std::max(1.0, s)) break;
      const double log_t = std::log(at.t);
      if (miss > 0.0) {
        log_lo = log_t;
      } else {
        log_hi = log_t;
      }
      if (log_hi - log_lo < 1e-14) {
        // The bracket came from e^s u*(s) being nondecreasing; widen it if
        // that failed so a violation is reported rather than hidden.
        if (miss >= 0.0 || log_lo < std::log(kLowestLevel)) break;
        log_lo -= 1.0;
      }
      double next = at.measure_derivative < 0.0 ? log_t - miss / (at.t * at.measure_derivative) : log_lo - 1.0;
      if (!(next > log_lo && next < log_hi)) next = 0.5 * (log_lo + log_hi);
      at = level_set(u, std::exp(next));
    }
    if (std::abs(at.measure - s) > 1e-8 * std::max(1.0, s)) {
      throw Error(ErrorKind::NotConverged, "could not invert the distribution function");
    }
    profile.s_grid.push_back(s);
    // First-order corrections for the residual mismatch mu(t) - s.
    const double residual = s - at.measure;
    profile.u_star.push_back(at.measure_derivative < 0.0 ? at.t + residual / at.measure_derivative : at.t);
    profile.I_vals.push_back(at.integral + at.t * residual);
    profile.t_grid.push_back(at.t);
    profile.mu_vals.push_back(at.measure);
    prev = at;
    prev_s = s;
  }
  return profile;
}

DifferentialReport verify_differential_structure(const RearrangementProfile& p) {
  DifferentialReport report;
  const std::size_t n = p.s_grid.size();
  for (std::size_t i = 0; i + 1 < n; ++i) {
    const double a = std::exp(p.s_grid[i]) * p.u_star[i];
    const double b = std::exp(p.s_grid[i + 1]) * p.u_star[i + 1];
    report.max_violation_exp_monotone =
        std::max(report.max_violation_exp_monotone, (a - b) / std::max(1.0, std::abs(a)));
  }
  for (std::size_t i = 1; i + 1 < n; ++i) {
    const double s0 = std::exp(-p.s_grid[i - 1]);
    const double s1 = std::exp(-p.s_grid[i]);
    const double s2 = std::exp(-p.s_grid[i + 1]);
    const double chord = p.I_vals[i - 1] + (p.I_vals[i + 1] - p.I_vals[i - 1]) * (s1 - s0) / (s2 - s0);
    report.max_convexity_violation_G = std::max(report.max_convexity_violation_G, p.I_vals[i] - chord);
  }
  for (std::size_t i = 0; i < n; ++i) {
    report.max_I_bound_violation =
        std::max(report.max_I_bound_violation, p.I_vals[i] + std::expm1(-p.s_grid[i]));
  }
  return report;
}

namespace {

// Adaptive Gauss-Kronrod 7-15 for a scalar integrand.
template <class Fn>
double kronrod_adaptive(Fn&& f, double a, double b, double tolerance, int depth) {
  const double mid = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  double kronrod = 0.0, gauss = 0.0;
  for (int i = 0; i < 15; ++i) {
    const int k = i < 8 ? i : 14 - i;
    const double fx = f(mid + half * (i < 8 ? -kKronrodNodes[k] : kKronrodNodes[k]));
    kronrod += kKronrodWeights[k] * fx;
    if (k % 2 == 1) gauss += kGaussWeights[k / 2] * fx;
  }
  kronrod *= half;
  gauss *= half;
  if (depth <= 0 || std::abs(kronrod - gauss) <= tolerance) return kronrod;
  return kronrod_adaptive(f, a, mid, 0.5 * tolerance, depth - 1) + kronrod_adaptive(f, mid, b, 0.5 * tolerance, depth - 1);
}

}  // namespace

double layer_cake_integral(const DensityField& u, double tolerance) {
  // int_0^max mu(t) dt with t = max e^{-v}. mu has kinks at the values of the
  // local maxima and logarithmic slopes at saddle values, which become
  // breakpoints. Levels below max e^{-30} (or 1e-14) contribute below 1e-11.
  const double top = u.max_value();
  const double v_end = std::min(30.0, std::log(top / kLowestLevel));
  std::vector<double> cuts{0.0, v_end};
  for (const auto* points : {&u.local_maxima(), &u.saddle_points()}) {
    for (const auto& p : *points) {
      const double value = u(p);
      if (value > 0.0 && value < top) cuts.push_back(std::log(top / value));
    }
  }
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::remove_if(cuts.begin(), cuts.end(), [&](double v) { return v > v_end; }), cuts.end());
  auto g = [&](double v) {
    const double t = top * std::exp(-v);
    return level_set(u, t).measure * t;
  };
  double total = 0.0;
  for (std::size_t p = 0; p + 1 < cuts.size(); ++p) {
    if (cuts[p + 1] - cuts[p] < 1e-12) continue;
    total += kronrod_adaptive(g, cuts[p], cuts[p + 1], tolerance / static_cast<double>(cuts.size()), 12);
  }
  return total;
}

}  // namespace tfconc
