#pragma once

// Supported simply connected planar domains: a wedge with apex at the origin,
// the plane minus disjoint closed rays (which includes the comb family), a
// Jordan polygon, and a disk. Domains are immutable after construction.

#include <cmath>
#include <cstddef>
#include <limits>
#include <numbers>
#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "hardy/simd/kernels.hpp"

namespace hardy {

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

class DomainError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct Point {
  double x = 0.0;
  double y = 0.0;

  friend Point operator+(Point a, Point b) { return {a.x + b.x, a.y + b.y}; }
  friend Point operator-(Point a, Point b) { return {a.x - b.x, a.y - b.y}; }
  friend Point operator*(double s, Point a) { return {s * a.x, s * a.y}; }
  friend bool operator==(Point a, Point b) = default;

  double norm() const { return std::hypot(x, y); }
  double norm2() const { return x * x + y * y; }
  double arg() const { return std::atan2(y, x); }
  static Point polar(double r, double angle) { return {r * std::cos(angle), r * std::sin(angle)}; }
};

inline double dot(Point a, Point b) { return a.x * b.x + a.y * b.y; }
inline double cross(Point a, Point b) { return a.x * b.y - a.y * b.x; }

/// Angle mapped into [0, 2*pi).
double wrap_angle(double a);
/// Angle mapped into (-pi, pi].
double wrap_signed(double a);

/// Open angular interval (start, start + width), possibly wrapping past 2*pi.
struct AngleInterval {
  double start = 0.0;  // in [0, 2*pi)
  double width = 0.0;  // in (0, 2*pi]

  bool contains(double angle) const;
  double mid() const { return wrap_angle(start + 0.5 * width); }
  double end() const { return start + width; }
};

struct Segment {
  Point a;
  Point b;
};

struct Ray {
  Point origin;
  Point dir;  // unit
};

struct CircularArc {
  Point center;
  double radius = 1.0;
  AngleInterval angles;  // closed arc [start, start+width]
};

struct FullCircle {
  Point center;
  double radius = 1.0;
};

using BoundaryPiece = std::variant<Segment, Ray, CircularArc, FullCircle>;

double distance_to_piece(const BoundaryPiece& piece, Point z);

/// Shortest distance between two straight pieces (segment or ray). Returns
/// nullopt when either piece is curved.
std::optional<double> distance_between(const BoundaryPiece& a, const BoundaryPiece& b);

/// Parameter t in [0,1] of the first point where segment a->b meets `piece`,
/// or nullopt. Touching counts as meeting.
std::optional<double> segment_hit(const BoundaryPiece& piece, Point a, Point b);

enum class DomainKind { wedge, slit_plane, polygon, disk, comb };

std::string kind_name(DomainKind kind);

struct WedgeParams {
  double opening = kPi / 2.0;  // in (0, 2*pi)
  double axis = 0.0;           // direction of the bisector
};

struct CombParams {
  double c = 4.0 * kPi;  // level l slits start at radius exp(c*l)
  int levels = 1;
  double r_max = std::numeric_limits<double>::infinity();  // levels starting beyond are dropped
};

struct DiskParams {
  Point center;
  double radius = 1.0;
};

/// A maximal arc of D intersected with the circle |z| = r. A circle lying
/// wholly inside D is reported as a single arc of width 2*pi with closed = true.
struct CircleArc {
  AngleInterval angles;
  bool closed = false;
};

class Domain {
 public:
  static Domain wedge(double opening, double axis, Point base_point);
  /// The plane minus closed rays; rays must be pairwise disjoint.
  static Domain slit_plane(std::vector<Ray> rays, Point base_point);
  /// Interior of a simple polygon (vertices in either orientation).
  static Domain polygon(std::vector<Point> vertices, Point base_point);
  static Domain disk(Point center, double radius, Point base_point);
  /// Plane minus four rays [e^{ik pi/2}, inf) and, for each level l = 1..levels
  /// with exp(c*l) < r_max, the 2^{l+1} rays starting at exp(c*l) e^{i pi (1/2+k)/2^l}.
  static Domain comb(double c, int levels, double r_max, Point base_point);

  DomainKind kind() const { return kind_; }
  bool bounded() const { return bounded_; }
  Point base_point() const { return base_point_; }
  const std::vector<BoundaryPiece>& pieces() const { return pieces_; }
  const WedgeParams& wedge_params() const { return wedge_; }
  const CombParams& comb_params() const { return comb_; }
  const DiskParams& disk_params() const { return disk_; }
  const std::vector<Point>& polygon_vertices() const { return vertices_; }

  /// Returns a copy with a different base point (validated).
  Domain with_base_point(Point p) const;

  bool contains(Point z) const;
  double distance_to_boundary(Point z) const;

  struct NearestPiece {
    double distance;
    std::size_t piece;
  };
  NearestPiece nearest_piece(Point z) const;

  /// Maximal open arcs of D on |z| = r, sorted by start angle.
  std::vector<CircleArc> circle_intersection(double r) const;

  /// True when every piece is a ray pointing radially away from the origin
  /// (wedge, radial slit plane, comb); such domains are star-shaped about 0.
  bool starlike_about_origin() const;

  /// Smallest distance between two distinct boundary pieces within |z| <= radius
  /// (pairs sharing a declared endpoint are skipped). +inf for a single piece.
  double min_piece_separation(double radius) const;

 private:
  Domain() = default;
  void finalize();

  DomainKind kind_ = DomainKind::slit_plane;
  bool bounded_ = false;
  Point base_point_;
  std::vector<BoundaryPiece> pieces_;
  WedgeParams wedge_;
  CombParams comb_;
  DiskParams disk_;
  std::vector<Point> vertices_;

  // Straight pieces in SIMD layout, padded to kSegmentLanes.
  struct Straight {
    std::vector<double> ax, ay, dx, dy, inv_len2, tmax;
    std::vector<std::size_t> piece_index;
    std::size_t real_count = 0;
    simd::SegmentSoA view() const;
  } straight_;
  std::vector<std::size_t> curved_;
};

}  // namespace hardy
