#pragma once

#include <functional>
#include <iosfwd>
#include <memory>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "tfconc/core.hpp"

namespace tfconc {

/// Real 2x2 matrix [[a, b], [c, d]] acting on (x, w).
struct Matrix2 {
  double a = 1.0, b = 0.0, c = 0.0, d = 1.0;

  double det() const { return a * d - b * c; }
  Matrix2 inverse() const;
  PhasePoint apply(PhasePoint p) const { return {a * p.x + b * p.w, c * p.x + d * p.w}; }
  double operator_norm() const;

  friend Matrix2 operator*(const Matrix2& l, const Matrix2& r) {
    return {l.a * r.a + l.b * r.c, l.a * r.b + l.b * r.d, l.c * r.a + l.d * r.c, l.c * r.b + l.d * r.d};
  }
};

struct RegionNode;

/// Immutable handle to a constructive phase-space set.
class Region {
 public:
  static Region disk(PhasePoint center, double r);
  static Region annulus(PhasePoint center, double r_in, double r_out);
  static Region rect(PhasePoint corner, double width_x, double width_w);
  /// { m z + shift : z in child }.
  static Region affine(const Matrix2& m, PhasePoint shift, Region child);
  static Region set_union(std::vector<Region> children);
  static Region difference(Region left, Region right);

  const RegionNode& node() const { return *node_; }

 private:
  explicit Region(std::shared_ptr<const RegionNode> node) : node_(std::move(node)) {}
  std::shared_ptr<const RegionNode> node_;
};

struct Disk {
  PhasePoint center;
  double r;
};
struct Annulus {
  PhasePoint center;
  double r_in;
  double r_out;
};
struct Rect {
  PhasePoint corner;
  double width_x;
  double width_w;
};
struct AffineImage {
  Matrix2 matrix;
  PhasePoint shift;
  Region child;
};
struct Union {
  std::vector<Region> children;
};
struct Difference {
  Region left;
  Region right;
};

struct RegionNode {
  std::variant<Disk, Annulus, Rect, AffineImage, Union, Difference> value;
};

struct BoundingDisk {
  PhasePoint center;
  double radius;
};

/// Nodes and positive weights; integrating 1 reproduces the region's measure.
struct QuadratureRule {
  std::vector<PhasePoint> nodes;
  std::vector<double> weights;

  std::size_t size() const { return nodes.size(); }
  double total_weight() const;
  template <class Fn>
  double integrate(Fn&& fn) const {
    double sum = 0.0;
    for (std::size_t i = 0; i < nodes.size(); ++i) sum += weights[i] * fn(nodes[i]);
    return sum;
  }
};

double measure(const Region& region);
bool contains(const Region& region, PhasePoint z);
BoundingDisk bounding_disk(const Region& region);

/// Per-primitive rules: polar Gauss-Legendre x trapezoid for disks and annuli,
/// tensor Gauss-Legendre for rectangles, mapped rules for affine images, and an
/// exact-chord sweep rule for overlapping unions and differences.
QuadratureRule quadrature(const Region& region, int order);

/// Same rule with all nodes translated by -offset.
QuadratureRule translated(const QuadratureRule& rule, PhasePoint offset);

// Sweep integration over sets described by their chords on vertical lines.

struct ChordInterval {
  double lo;
  double hi;
  int tag_lo = 0;
  int tag_hi = 0;
};

/// Sorted, disjoint w-intervals of the set on the vertical line at x.
using ChordFn = std::function<std::vector<ChordInterval>(double x)>;

struct SweepLine {
  double x;
  double weight;
  std::vector<ChordInterval> chords;
};

struct SweepOptions {
  int order = 32;
  int samples = 256;
  double breakpoint_tolerance = 1e-13;
  /// Panels wider than this are split evenly; 0 disables splitting.
  double max_panel_width = 0.0;
};

/// Outer quadrature lines over [xa, xb]. Breakpoints (x where the chord
/// structure changes) are located by bisection and every panel between them
/// uses Gauss-Legendre in theta with x = mid - half cos(theta), which absorbs
/// square-root behaviour at vertical tangencies. `seeds` are extra sample
/// abscissae that are known to meet the set.
std::vector<SweepLine> sweep_lines(double xa, double xb, const ChordFn& chords, const SweepOptions& options,
                                   std::span<const double> seeds = {});

/// Outer quadrature lines for known breakpoints `cuts` (sorted, including
/// both ends); panels whose midpoint line is empty are skipped.
std::vector<SweepLine> panel_lines(std::span<const double> cuts, const ChordFn& chords, const SweepOptions& options);

QuadratureRule rule_from_lines(const std::vector<SweepLine>& lines, int order);

/// Exact chords of the region on the vertical line at x, tagged by the
/// primitive boundary that produced each endpoint.
std::vector<ChordInterval> region_chords(const Region& region, double x);

// Structured-text (JSON) region files.
Region parse_region(const std::string& text);
Region read_region(std::istream& in);
std::string region_to_json(const Region& region);

}  // namespace tfconc
