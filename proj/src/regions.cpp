#include "tfconc/regions.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <iterator>
#include <limits>
#include <sstream>

#include <json.hpp>

#include "tfconc/numerics.hpp"

namespace tfconc {

namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

bool finite_point(PhasePoint p) { return std::isfinite(p.x) && std::isfinite(p.w); }

double distance(PhasePoint a, PhasePoint b) { return std::hypot(a.x - b.x, a.w - b.w); }

bool disjoint(const BoundingDisk& a, const BoundingDisk& b) {
  return distance(a.center, b.center) > a.radius + b.radius;
}

// ---------------------------------------------------------------- intervals

using Intervals = std::vector<ChordInterval>;

Intervals union_of(Intervals all) {
  std::sort(all.begin(), all.end(), [](const auto& l, const auto& r) { return l.lo < r.lo; });
  Intervals out;
  for (const auto& iv : all) {
    if (!out.empty() && iv.lo <= out.back().hi) {
      if (iv.hi > out.back().hi) {
        out.back().hi = iv.hi;
        out.back().tag_hi = iv.tag_hi;
      }
    } else {
      out.push_back(iv);
    }
  }
  return out;
}

Intervals subtract(const Intervals& left, const Intervals& right) {
  Intervals out;
  for (auto piece : left) {
    for (const auto& cut : right) {
      if (cut.hi <= piece.lo || cut.lo >= piece.hi) continue;
      if (cut.lo > piece.lo) out.push_back({piece.lo, cut.lo, piece.tag_lo, cut.tag_lo});
      piece.lo = cut.hi;
      piece.tag_lo = cut.tag_hi;
      if (piece.lo >= piece.hi) break;
    }
    if (piece.lo < piece.hi) out.push_back(piece);
  }
  return out;
}

// ------------------------------------------------------------------ chords

struct Line {
  PhasePoint origin;
  PhasePoint dir;
};

Intervals disk_chord(PhasePoint center, double r, const Line& line, int tag_base) {
  const PhasePoint f = line.origin - center;
  const double a = line.dir.norm2();
  const double b = f.x * line.dir.x + f.w * line.dir.w;
  const double c = f.norm2() - r * r;
  const double disc = b * b - a * c;
  if (disc <= 0.0) return {};
  const double sq = std::sqrt(disc);
  // Stable quadratic roots.
  const double q = b >= 0.0 ? -(b + sq) : -(b - sq);
  double s1 = q / a;
  double s2 = q != 0.0 ? c / q : -s1;
  if (s1 > s2) std::swap(s1, s2);
  return {{s1, s2, tag_base, tag_base + 1}};
}

Intervals chords_rec(const Region& region, const Line& line, int& leaf) {
  return std::visit(
      Overloaded{
          [&](const Disk& d) {
            const int id = leaf++;
            return disk_chord(d.center, d.r, line, 8 * id);
          },
          [&](const Annulus& a) {
            const int id = leaf++;
            return subtract(disk_chord(a.center, a.r_out, line, 8 * id),
                            a.r_in > 0.0 ? disk_chord(a.center, a.r_in, line, 8 * id + 2) : Intervals{});
          },
          [&](const Rect& r) {
            const int id = leaf++;
            double lo = -std::numeric_limits<double>::infinity();
            double hi = std::numeric_limits<double>::infinity();
            int tag_lo = 8 * id + 4;
            int tag_hi = 8 * id + 4;
            const double origin[2] = {line.origin.x, line.origin.w};
            const double dir[2] = {line.dir.x, line.dir.w};
            const double low[2] = {r.corner.x, r.corner.w};
            const double high[2] = {r.corner.x + r.width_x, r.corner.w + r.width_w};
            for (int k = 0; k < 2; ++k) {
              if (dir[k] == 0.0) {
                if (origin[k] < low[k] || origin[k] > high[k]) return Intervals{};
                continue;
              }
              double t1 = (low[k] - origin[k]) / dir[k];
              double t2 = (high[k] - origin[k]) / dir[k];
              int side1 = 2 * k;
              int side2 = 2 * k + 1;
              if (t1 > t2) {
                std::swap(t1, t2);
                std::swap(side1, side2);
              }
              if (t1 > lo) {
                lo = t1;
                tag_lo = 8 * id + 4 + side1;
              }
              if (t2 < hi) {
                hi = t2;
                tag_hi = 8 * id + 4 + side2;
              }
            }
            if (!(lo < hi)) return Intervals{};
            return Intervals{{lo, hi, tag_lo, tag_hi}};
          },
          [&](const AffineImage& a) {
            const Matrix2 inv = a.matrix.inverse();
            const Line local{inv.apply(line.origin - a.shift), inv.apply(line.dir)};
            return chords_rec(a.child, local, leaf);
          },
          [&](const Union& u) {
            Intervals all;
            for (const auto& child : u.children) {
              auto part = chords_rec(child, line, leaf);
              all.insert(all.end(), part.begin(), part.end());
            }
            return union_of(std::move(all));
          },
          [&](const Difference& d) {
            auto left = chords_rec(d.left, line, leaf);
            auto right = chords_rec(d.right, line, leaf);
            return subtract(left, right);
          },
      },
      region.node().value);
}

// ------------------------------------------------------------------- rules

QuadratureRule polar_rule(PhasePoint center, double r_in, double r_out, int order) {
  const auto& gl = numerics::gauss_legendre(order);
  const int angular = 2 * order;
  QuadratureRule rule;
  rule.nodes.reserve(static_cast<std::size_t>(order) * angular);
  rule.weights.reserve(rule.nodes.capacity());
  const double half = 0.5 * (r_out - r_in);
  const double dtheta = 2.0 * kPi / angular;
  for (int i = 0; i < order; ++i) {
    const double rho = r_in + half * (1.0 + gl.nodes[i]);
    const double radial_weight = gl.weights[i] * half * rho * dtheta;
    for (int j = 0; j < angular; ++j) {
      const double theta = j * dtheta;
      rule.nodes.push_back({center.x + rho * std::cos(theta), center.w + rho * std::sin(theta)});
      rule.weights.push_back(radial_weight);
    }
  }
  return rule;
}

QuadratureRule rect_rule(const Rect& r, int order) {
  const auto& gl = numerics::gauss_legendre(order);
  QuadratureRule rule;
  const double hx = 0.5 * r.width_x;
  const double hw = 0.5 * r.width_w;
  for (int i = 0; i < order; ++i) {
    for (int j = 0; j < order; ++j) {
      rule.nodes.push_back({r.corner.x + hx * (1.0 + gl.nodes[i]), r.corner.w + hw * (1.0 + gl.nodes[j])});
      rule.weights.push_back(gl.weights[i] * gl.weights[j] * hx * hw);
    }
  }
  return rule;
}

void append(QuadratureRule& into, const QuadratureRule& from) {
  into.nodes.insert(into.nodes.end(), from.nodes.begin(), from.nodes.end());
  into.weights.insert(into.weights.end(), from.weights.begin(), from.weights.end());
}

bool children_disjoint(const std::vector<Region>& children) {
  std::vector<BoundingDisk> disks;
  for (const auto& c : children) disks.push_back(bounding_disk(c));
  for (std::size_t i = 0; i < disks.size(); ++i) {
    for (std::size_t j = i + 1; j < disks.size(); ++j) {
      if (!disjoint(disks[i], disks[j])) return false;
    }
  }
  return true;
}

std::vector<SweepLine> region_sweep(const Region& region, int order) {
  const auto bd = bounding_disk(region);
  SweepOptions options;
  options.order = order;
  return sweep_lines(bd.center.x - bd.radius, bd.center.x + bd.radius,
                     [&](double x) { return region_chords(region, x); }, options);
}

double sweep_measure(const Region& region, int order) {
  double total = 0.0;
  for (const auto& line : region_sweep(region, order)) {
    for (const auto& c : line.chords) total += line.weight * (c.hi - c.lo);
  }
  return total;
}

double composite_measure(const Region& region) {
  const double fine = sweep_measure(region, 48);
  const double coarse = sweep_measure(region, 32);
  if (!std::isfinite(fine)) throw Error(ErrorKind::NonFiniteMeasure, "region measure is not finite");
  if (std::abs(fine - coarse) > 1e-6 * std::max(fine, 1e-300)) {
    throw Error(ErrorKind::NotConverged, "sweep measure did not reach 1e-6 relative agreement");
  }
  return fine;
}

// ------------------------------------------------------------------- json

using nlohmann::json;

PhasePoint point_from(const json& j, const char* field) {
  if (!j.contains(field) || !j[field].is_array() || j[field].size() != 2 || !j[field][0].is_number() ||
      !j[field][1].is_number()) {
    throw Error(ErrorKind::InvalidInput, std::string("field '") + field + "' must be a 2-element number array");
  }
  return {j[field][0].get<double>(), j[field][1].get<double>()};
}

double number_from(const json& j, const char* field) {
  if (!j.contains(field) || !j[field].is_number()) {
    throw Error(ErrorKind::InvalidInput, std::string("field '") + field + "' must be a number");
  }
  return j[field].get<double>();
}

const json& child_from(const json& j, const char* field) {
  if (!j.contains(field) || !j[field].is_object()) {
    throw Error(ErrorKind::InvalidInput, std::string("field '") + field + "' must be a region object");
  }
  return j[field];
}

Region from_json(const json& j) {
  if (!j.is_object() || !j.contains("type") || !j["type"].is_string()) {
    throw Error(ErrorKind::InvalidInput, "region node needs a string 'type'");
  }
  const auto type = j["type"].get<std::string>();
  if (type == "disk") return Region::disk(point_from(j, "center"), number_from(j, "r"));
  if (type == "annulus") {
    return Region::annulus(point_from(j, "center"), number_from(j, "r_in"), number_from(j, "r_out"));
  }
  if (type == "rect") {
    const auto widths = point_from(j, "widths");
    return Region::rect(point_from(j, "corner"), widths.x, widths.w);
  }
  if (type == "affine") {
    const auto& m = j.contains("matrix") ? j["matrix"] : json();
    if (!m.is_array() || m.size() != 2 || !m[0].is_array() || !m[1].is_array() || m[0].size() != 2 ||
        m[1].size() != 2) {
      throw Error(ErrorKind::InvalidInput, "field 'matrix' must be a 2x2 number array");
    }
    for (const auto& row : m) {
      for (const auto& v : row) {
        if (!v.is_number()) throw Error(ErrorKind::InvalidInput, "field 'matrix' must hold numbers");
      }
    }
    const Matrix2 mat{m[0][0].get<double>(), m[0][1].get<double>(), m[1][0].get<double>(), m[1][1].get<double>()};
    return Region::affine(mat, point_from(j, "shift"), from_json(child_from(j, "child")));
  }
  if (type == "union") {
    if (!j.contains("children") || !j["children"].is_array()) {
      throw Error(ErrorKind::InvalidInput, "field 'children' must be an array");
    }
    std::vector<Region> children;
    for (const auto& c : j["children"]) children.push_back(from_json(c));
    return Region::set_union(std::move(children));
  }
  if (type == "difference") {
    return Region::difference(from_json(child_from(j, "left")), from_json(child_from(j, "right")));
  }
  throw Error(ErrorKind::InvalidInput, "unknown region type '" + type + "'");
}

json to_json(const Region& region) {
  return std::visit(
      Overloaded{
          [](const Disk& d) { return json{{"type", "disk"}, {"center", {d.center.x, d.center.w}}, {"r", d.r}}; },
          [](const Annulus& a) {
            return json{{"type", "annulus"}, {"center", {a.center.x, a.center.w}}, {"r_in", a.r_in},
                        {"r_out", a.r_out}};
          },
          [](const Rect& r) {
            return json{{"type", "rect"}, {"corner", {r.corner.x, r.corner.w}}, {"widths", {r.width_x, r.width_w}}};
          },
          [](const AffineImage& a) {
            return json{{"type", "affine"},
                        {"matrix", {{a.matrix.a, a.matrix.b}, {a.matrix.c, a.matrix.d}}},
                        {"shift", {a.shift.x, a.shift.w}},
                        {"child", to_json(a.child)}};
          },
          [](const Union& u) {
            json children = json::array();
            for (const auto& c : u.children) children.push_back(to_json(c));
            return json{{"type", "union"}, {"children", children}};
          },
          [](const Difference& d) {
            return json{{"type", "difference"}, {"left", to_json(d.left)}, {"right", to_json(d.right)}};
          },
      },
      region.node().value);
}

}  // namespace

// ------------------------------------------------------------------ Matrix2

Matrix2 Matrix2::inverse() const {
  const double det_ = det();
  return {d / det_, -b / det_, -c / det_, a / det_};
}

double Matrix2::operator_norm() const {
  // Largest singular value from the eigenvalues of M^T M.
  const double p = a * a + c * c;
  const double q = a * b + c * d;
  const double r = b * b + d * d;
  const double mean = 0.5 * (p + r);
  const double diff = std::sqrt(0.25 * (p - r) * (p - r) + q * q);
  return std::sqrt(mean + diff);
}

// ------------------------------------------------------------- construction

Region Region::disk(PhasePoint center, double r) {
  if (!finite_point(center) || !std::isfinite(r) || r <= 0.0) {
    throw Error(ErrorKind::InvalidInput, "disk needs a finite center and radius > 0");
  }
  return Region(std::make_shared<const RegionNode>(RegionNode{Disk{center, r}}));
}

Region Region::annulus(PhasePoint center, double r_in, double r_out) {
  if (!finite_point(center) || !std::isfinite(r_out) || !(r_in >= 0.0) || !(r_in < r_out)) {
    throw Error(ErrorKind::InvalidInput, "annulus needs 0 <= r_in < r_out");
  }
  return Region(std::make_shared<const RegionNode>(RegionNode{Annulus{center, r_in, r_out}}));
}

Region Region::rect(PhasePoint corner, double width_x, double width_w) {
  if (!finite_point(corner) || !std::isfinite(width_x) || !std::isfinite(width_w) || width_x <= 0.0 ||
      width_w <= 0.0) {
    throw Error(ErrorKind::InvalidInput, "rect needs a finite corner and positive widths");
  }
  return Region(std::make_shared<const RegionNode>(RegionNode{Rect{corner, width_x, width_w}}));
}

Region Region::affine(const Matrix2& m, PhasePoint shift, Region child) {
  const double det = m.det();
  if (!std::isfinite(det) || std::abs(det) < 1e-14 || !finite_point(shift)) {
    throw Error(ErrorKind::InvalidInput, "affine image needs an invertible finite matrix");
  }
  return Region(std::make_shared<const RegionNode>(RegionNode{AffineImage{m, shift, std::move(child)}}));
}

Region Region::set_union(std::vector<Region> children) {
  if (children.empty()) throw Error(ErrorKind::InvalidInput, "union needs at least one child");
  return Region(std::make_shared<const RegionNode>(RegionNode{Union{std::move(children)}}));
}

Region Region::difference(Region left, Region right) {
  return Region(std::make_shared<const RegionNode>(RegionNode{Difference{std::move(left), std::move(right)}}));
}

// --------------------------------------------------------------- operations

double QuadratureRule::total_weight() const {
  double sum = 0.0;
  for (double w : weights) sum += w;
  return sum;
}

double measure(const Region& region) {
  const double m = std::visit(
      Overloaded{
          [](const Disk& d) { return kPi * d.r * d.r; },
          [](const Annulus& a) { return kPi * (a.r_out * a.r_out - a.r_in * a.r_in); },
          [](const Rect& r) { return r.width_x * r.width_w; },
          [](const AffineImage& a) { return std::abs(a.matrix.det()) * measure(a.child); },
          [&](const Union& u) {
            if (children_disjoint(u.children)) {
              double sum = 0.0;
              for (const auto& c : u.children) sum += measure(c);
              return sum;
            }
            return composite_measure(region);
          },
          [&](const Difference& d) {
            if (disjoint(bounding_disk(d.left), bounding_disk(d.right))) return measure(d.left);
            return composite_measure(region);
          },
      },
      region.node().value);
  if (!std::isfinite(m)) throw Error(ErrorKind::NonFiniteMeasure, "region measure is not finite");
  return m;
}

bool contains(const Region& region, PhasePoint z) {
  return std::visit(
      Overloaded{
          [&](const Disk& d) { return (z - d.center).norm2() < d.r * d.r; },
          [&](const Annulus& a) {
            const double r2 = (z - a.center).norm2();
            return r2 < a.r_out * a.r_out && r2 >= a.r_in * a.r_in;
          },
          [&](const Rect& r) {
            return z.x >= r.corner.x && z.x <= r.corner.x + r.width_x && z.w >= r.corner.w &&
                   z.w <= r.corner.w + r.width_w;
          },
          [&](const AffineImage& a) { return contains(a.child, a.matrix.inverse().apply(z - a.shift)); },
          [&](const Union& u) {
            return std::any_of(u.children.begin(), u.children.end(), [&](const Region& c) { return contains(c, z); });
          },
          [&](const Difference& d) { return contains(d.left, z) && !contains(d.right, z); },
      },
      region.node().value);
}

BoundingDisk bounding_disk(const Region& region) {
  return std::visit(
      Overloaded{
          [](const Disk& d) { return BoundingDisk{d.center, d.r}; },
          [](const Annulus& a) { return BoundingDisk{a.center, a.r_out}; },
          [](const Rect& r) {
            return BoundingDisk{{r.corner.x + 0.5 * r.width_x, r.corner.w + 0.5 * r.width_w},
                                0.5 * std::hypot(r.width_x, r.width_w)};
          },
          [](const AffineImage& a) {
            const auto child = bounding_disk(a.child);
            return BoundingDisk{a.matrix.apply(child.center) + a.shift, a.matrix.operator_norm() * child.radius};
          },
          [](const Union& u) {
            double x_lo = std::numeric_limits<double>::infinity(), x_hi = -x_lo;
            double w_lo = x_lo, w_hi = -x_lo;
            std::vector<BoundingDisk> disks;
            for (const auto& c : u.children) {
              const auto d = bounding_disk(c);
              disks.push_back(d);
              x_lo = std::min(x_lo, d.center.x - d.radius);
              x_hi = std::max(x_hi, d.center.x + d.radius);
              w_lo = std::min(w_lo, d.center.w - d.radius);
              w_hi = std::max(w_hi, d.center.w + d.radius);
            }
            const PhasePoint center{0.5 * (x_lo + x_hi), 0.5 * (w_lo + w_hi)};
            double radius = 0.0;
            for (const auto& d : disks) radius = std::max(radius, distance(center, d.center) + d.radius);
            return BoundingDisk{center, radius};
          },
          [](const Difference& d) { return bounding_disk(d.left); },
      },
      region.node().value);
}

std::vector<ChordInterval> region_chords(const Region& region, double x) {
  int leaf = 0;
  return chords_rec(region, Line{{x, 0.0}, {0.0, 1.0}}, leaf);
}

QuadratureRule quadrature(const Region& region, int order) {
  if (order < 4) throw Error(ErrorKind::OrderTooLow, "quadrature order must be at least 4");
  QuadratureRule rule = std::visit(
      Overloaded{
          [&](const Disk& d) { return polar_rule(d.center, 0.0, d.r, order); },
          [&](const Annulus& a) { return polar_rule(a.center, a.r_in, a.r_out, order); },
          [&](const Rect& r) { return rect_rule(r, order); },
          [&](const AffineImage& a) {
            auto child = quadrature(a.child, order);
            const double jac = std::abs(a.matrix.det());
            for (std::size_t i = 0; i < child.size(); ++i) {
              child.nodes[i] = a.matrix.apply(child.nodes[i]) + a.shift;
              child.weights[i] *= jac;
            }
            return child;
          },
          [&](const Union& u) {
            if (children_disjoint(u.children)) {
              QuadratureRule all;
              for (const auto& c : u.children) append(all, quadrature(c, order));
              return all;
            }
            return rule_from_lines(region_sweep(region, order), order);
          },
          [&](const Difference& d) {
            if (disjoint(bounding_disk(d.left), bounding_disk(d.right))) return quadrature(d.left, order);
            return rule_from_lines(region_sweep(region, order), order);
          },
      },
      region.node().value);
  const double m = measure(region);
  if (std::abs(rule.total_weight() - m) > 1e-9 * std::max(m, 1e-300)) {
    throw Error(ErrorKind::OrderTooLow, "quadrature self-check on the constant integrand failed");
  }
  return rule;
}

QuadratureRule translated(const QuadratureRule& rule, PhasePoint offset) {
  QuadratureRule out = rule;
  for (auto& n : out.nodes) n = n - offset;
  return out;
}

// -------------------------------------------------------------------- sweep

namespace {

std::vector<int> signature(const Intervals& chords) {
  std::vector<int> sig;
  sig.reserve(2 * chords.size());
  for (const auto& c : chords) {
    sig.push_back(c.tag_lo);
    sig.push_back(c.tag_hi);
  }
  return sig;
}

}  // namespace

std::vector<SweepLine> sweep_lines(double xa, double xb, const ChordFn& chords, const SweepOptions& options,
                                   std::span<const double> seeds) {
  if (!(xb > xa)) return {};
  const double tol = options.breakpoint_tolerance * std::max(1.0, xb - xa);

  std::vector<double> xs;
  const int n = std::max(options.samples, 2);
  for (int i = 0; i <= n; ++i) xs.push_back(xa + (xb - xa) * i / n);
  for (double s : seeds) {
    if (s > xa && s < xb) xs.push_back(s);
  }
  std::sort(xs.begin(), xs.end());
  xs.erase(std::unique(xs.begin(), xs.end()), xs.end());

  std::vector<std::vector<int>> sigs;
  sigs.reserve(xs.size());
  for (double x : xs) sigs.push_back(signature(chords(x)));

  std::vector<double> breaks{xa, xb};
  std::function<void(double, const std::vector<int>&, double, const std::vector<int>&)> refine =
      [&](double a, const std::vector<int>& sa, double b, const std::vector<int>& sb) {
        if (b - a <= tol) {
          breaks.push_back(0.5 * (a + b));
          return;
        }
        const double m = 0.5 * (a + b);
        const auto sm = signature(chords(m));
        if (sm != sa) refine(a, sa, m, sm);
        if (sm != sb) refine(m, sm, b, sb);
      };
  for (std::size_t i = 0; i + 1 < xs.size(); ++i) {
    if (sigs[i] != sigs[i + 1]) refine(xs[i], sigs[i], xs[i + 1], sigs[i + 1]);
  }
  std::sort(breaks.begin(), breaks.end());
  std::vector<double> cuts;
  for (double b : breaks) {
    if (cuts.empty() || b - cuts.back() > 2.0 * tol) cuts.push_back(b);
  }
  return panel_lines(cuts, chords, options);
}

std::vector<SweepLine> panel_lines(std::span<const double> cuts_in, const ChordFn& chords, const SweepOptions& options) {
  std::vector<double> cuts(cuts_in.begin(), cuts_in.end());
  if (options.max_panel_width > 0.0) {
    std::vector<double> split;
    for (std::size_t p = 0; p + 1 < cuts.size(); ++p) {
      const int pieces = static_cast<int>(std::ceil((cuts[p + 1] - cuts[p]) / options.max_panel_width));
      for (int k = 0; k < pieces; ++k) split.push_back(cuts[p] + (cuts[p + 1] - cuts[p]) * k / pieces);
    }
    if (!cuts.empty()) split.push_back(cuts.back());
    cuts = std::move(split);
  }

  const auto& gl = numerics::gauss_legendre(options.order);
  std::vector<SweepLine> lines;
  for (std::size_t p = 0; p + 1 < cuts.size(); ++p) {
    const double a = cuts[p];
    const double b = cuts[p + 1];
    if (!(b > a)) continue;
    const double mid = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    if (chords(mid).empty()) continue;
    for (int i = 0; i < options.order; ++i) {
      const double theta = 0.5 * kPi * (1.0 + gl.nodes[i]);
      const double x = mid - half * std::cos(theta);
      auto c = chords(x);
      if (c.empty()) continue;
      lines.push_back({x, 0.5 * kPi * gl.weights[i] * half * std::sin(theta), std::move(c)});
    }
  }
  return lines;
}

QuadratureRule rule_from_lines(const std::vector<SweepLine>& lines, int order) {
  const auto& gl = numerics::gauss_legendre(order);
  QuadratureRule rule;
  for (const auto& line : lines) {
    for (const auto& c : line.chords) {
      const double mid = 0.5 * (c.lo + c.hi);
      const double half = 0.5 * (c.hi - c.lo);
      for (int j = 0; j < order; ++j) {
        rule.nodes.push_back({line.x, mid + half * gl.nodes[j]});
        rule.weights.push_back(line.weight * gl.weights[j] * half);
      }
    }
  }
  return rule;
}

// ---------------------------------------------------------------------- io

Region parse_region(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw Error(ErrorKind::InvalidInput, std::string("region file is not valid JSON: ") + e.what());
  }
  return from_json(j);
}

Region read_region(std::istream& in) {
  std::string text{std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
  return parse_region(text);
}

std::string region_to_json(const Region& region) { return to_json(region).dump(); }

}  // namespace tfconc
