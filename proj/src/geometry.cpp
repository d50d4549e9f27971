#include "hardy/geometry.hpp"

#include <algorithm>

namespace hardy {

double wrap_angle(double a) {
  double w = std::fmod(a, kTwoPi);
  if (w < 0.0) w += kTwoPi;
  if (w >= kTwoPi) w = 0.0;
  return w;
}

double wrap_signed(double a) {
  double w = wrap_angle(a);
  return w > kPi ? w - kTwoPi : w;
}

bool AngleInterval::contains(double angle) const {
  const double off = wrap_angle(angle - start);
  return off > 0.0 && off < width;
}

std::string kind_name(DomainKind kind) {
  switch (kind) {
    case DomainKind::wedge: return "wedge";
    case DomainKind::slit_plane: return "slit-plane";
    case DomainKind::polygon: return "polygon";
    case DomainKind::disk: return "disk";
    case DomainKind::comb: return "comb";
  }
  return "unknown";
}

namespace {

constexpr double kSnap = 1e-9;

// Straight piece as origin + t*dir with t in [0, tmax]; tmax = inf for rays.
struct Line {
  Point o;
  Point d;
  double tmax;
};

std::optional<Line> as_line(const BoundaryPiece& p) {
  if (const auto* s = std::get_if<Segment>(&p)) return Line{s->a, s->b - s->a, 1.0};
  if (const auto* r = std::get_if<Ray>(&p)) {
    return Line{r->origin, r->dir, std::numeric_limits<double>::infinity()};
  }
  return std::nullopt;
}

double point_line_distance(const Line& l, Point z) {
  const Point rel = z - l.o;
  double t = dot(rel, l.d) / l.d.norm2();
  t = std::clamp(t, 0.0, l.tmax);
  return (rel - t * l.d).norm();
}

double point_arc_distance(Point center, double radius, const AngleInterval* arc, Point z) {
  const Point rel = z - center;
  if (arc == nullptr || arc->width >= kTwoPi) return std::abs(rel.norm() - radius);
  const double ang = rel.arg();
  const double off = wrap_angle(ang - arc->start);
  if (off <= arc->width) return std::abs(rel.norm() - radius);
  const Point e0 = center + Point::polar(radius, arc->start);
  const Point e1 = center + Point::polar(radius, arc->start + arc->width);
  return std::min((z - e0).norm(), (z - e1).norm());
}

// Roots t of |a + t*d - c|^2 = R^2 within [lo, hi].
std::vector<double> circle_line_roots(Point a, Point d, Point c, double radius, double lo, double hi) {
  const Point f = a - c;
  const double A = d.norm2();
  const double B = 2.0 * dot(f, d);
  const double C = f.norm2() - radius * radius;
  std::vector<double> out;
  double disc = B * B - 4.0 * A * C;
  const double tol = 4.0 * A * (kSnap * radius) * (kSnap * radius);
  if (disc < -tol) return out;
  disc = std::max(disc, 0.0);
  const double sq = std::sqrt(disc);
  for (double t : {(-B - sq) / (2.0 * A), (-B + sq) / (2.0 * A)}) {
    if (t >= lo && t <= hi) out.push_back(t);
  }
  return out;
}

}  // namespace

double distance_to_piece(const BoundaryPiece& piece, Point z) {
  if (auto l = as_line(piece)) return point_line_distance(*l, z);
  if (const auto* a = std::get_if<CircularArc>(&piece)) {
    return point_arc_distance(a->center, a->radius, &a->angles, z);
  }
  const auto& c = std::get<FullCircle>(piece);
  return point_arc_distance(c.center, c.radius, nullptr, z);
}

std::optional<double> segment_hit(const BoundaryPiece& piece, Point a, Point b) {
  const Point d = b - a;
  if (auto l = as_line(piece)) {
    const double denom = cross(d, l->d);
    const Point qa = l->o - a;
    const double scale = std::max(d.norm() * l->d.norm(), 1e-300);
    if (std::abs(denom) <= 1e-13 * scale) {
      // Parallel: only collinear overlap counts.
      if (std::abs(cross(qa, d)) > 1e-13 * std::max(qa.norm() * d.norm(), 1e-300)) return std::nullopt;
      const double dd = d.norm2();
      // Parameters along a->b of the piece's extent.
      const double t0 = dot(l->o - a, d) / dd;
      const double t1 = std::isinf(l->tmax) ? (dot(l->d, d) > 0 ? std::numeric_limits<double>::infinity()
                                                                  : -std::numeric_limits<double>::infinity())
                                            : dot(l->o + l->tmax * l->d - a, d) / dd;
      const double lo = std::min(t0, t1);
      const double hi = std::max(t0, t1);
      if (hi < 0.0 || lo > 1.0) return std::nullopt;
      return std::max(lo, 0.0);
    }
    const double t = cross(qa, l->d) / denom;
    const double u = cross(qa, d) / denom;
    constexpr double eps = 1e-12;
    if (t < -eps || t > 1.0 + eps) return std::nullopt;
    if (u < -eps || u > l->tmax + eps) return std::nullopt;
    return std::clamp(t, 0.0, 1.0);
  }
  Point center;
  double radius = 0.0;
  const AngleInterval* arc = nullptr;
  if (const auto* ca = std::get_if<CircularArc>(&piece)) {
    center = ca->center;
    radius = ca->radius;
    arc = &ca->angles;
  } else {
    const auto& fc = std::get<FullCircle>(piece);
    center = fc.center;
    radius = fc.radius;
  }
  std::optional<double> best;
  for (double t : circle_line_roots(a, d, center, radius, 0.0, 1.0)) {
    if (arc != nullptr && arc->width < kTwoPi) {
      const double ang = (a + t * d - center).arg();
      const double off = wrap_angle(ang - arc->start);
      if (off > arc->width + 1e-12 && off < kTwoPi - 1e-12) continue;
    }
    if (!best || t < *best) best = t;
  }
  return best;
}

std::optional<double> distance_between(const BoundaryPiece& a, const BoundaryPiece& b) {
  const auto la = as_line(a);
  const auto lb = as_line(b);
  if (!la || !lb) return std::nullopt;
  // Disjoint straight pieces attain their distance at an endpoint of one of them.
  auto finite = [](const Line& l, double len) {
    return Segment{l.o, l.o + (std::isinf(l.tmax) ? len : l.tmax) * l.d};
  };
  const double big = 1e12;
  const Segment sa = finite(*la, big);
  if (segment_hit(b, sa.a, sa.b)) return 0.0;
  double best = std::min(point_line_distance(*lb, la->o), point_line_distance(*la, lb->o));
  if (!std::isinf(la->tmax)) best = std::min(best, point_line_distance(*lb, la->o + la->tmax * la->d));
  if (!std::isinf(lb->tmax)) best = std::min(best, point_line_distance(*la, lb->o + lb->tmax * lb->d));
  return best;
}

simd::SegmentSoA Domain::Straight::view() const {
  return {ax.data(), ay.data(), dx.data(), dy.data(), inv_len2.data(), tmax.data(), ax.size()};
}

void Domain::finalize() {
  straight_ = {};
  curved_.clear();
  for (std::size_t i = 0; i < pieces_.size(); ++i) {
    if (auto l = as_line(pieces_[i])) {
      straight_.ax.push_back(l->o.x);
      straight_.ay.push_back(l->o.y);
      straight_.dx.push_back(l->d.x);
      straight_.dy.push_back(l->d.y);
      straight_.inv_len2.push_back(1.0 / l->d.norm2());
      straight_.tmax.push_back(l->tmax);
      straight_.piece_index.push_back(i);
    } else {
      curved_.push_back(i);
    }
  }
  straight_.real_count = straight_.ax.size();
  while (straight_.ax.size() % simd::kSegmentLanes != 0 || straight_.ax.empty()) {
    // Dummy far away, never nearer than a real piece.
    straight_.ax.push_back(1e150);
    straight_.ay.push_back(1e150);
    straight_.dx.push_back(1.0);
    straight_.dy.push_back(0.0);
    straight_.inv_len2.push_back(1.0);
    straight_.tmax.push_back(0.0);
    straight_.piece_index.push_back(pieces_.size());
  }
  if (!std::isfinite(base_point_.x) || !std::isfinite(base_point_.y)) {
    throw DomainError("base point must have finite coordinates");
  }
  if (!contains(base_point_) || distance_to_boundary(base_point_) <= 0.0) {
    throw DomainError("base point must lie strictly inside the domain");
  }
}

Domain Domain::with_base_point(Point p) const {
  Domain d = *this;
  d.base_point_ = p;
  d.finalize();
  return d;
}

Domain Domain::wedge(double opening, double axis, Point base_point) {
  if (!(opening > 0.0 && opening < kTwoPi)) throw DomainError("wedge opening must lie in (0, 2*pi)");
  Domain d;
  d.kind_ = DomainKind::wedge;
  d.wedge_ = {opening, axis};
  d.base_point_ = base_point;
  d.pieces_.push_back(Ray{{0.0, 0.0}, Point::polar(1.0, axis - 0.5 * opening)});
  d.pieces_.push_back(Ray{{0.0, 0.0}, Point::polar(1.0, axis + 0.5 * opening)});
  d.finalize();
  return d;
}

Domain Domain::slit_plane(std::vector<Ray> rays, Point base_point) {
  if (rays.empty()) throw DomainError("slit plane needs at least one ray");
  Domain d;
  d.kind_ = DomainKind::slit_plane;
  d.base_point_ = base_point;
  for (auto& r : rays) {
    const double n = r.dir.norm();
    if (!(n > 0.0) || !std::isfinite(n)) throw DomainError("ray direction must be nonzero");
    if (std::abs(n - 1.0) > 1e-9) throw DomainError("ray direction must be unit-norm");
    r.dir = (1.0 / n) * r.dir;
    d.pieces_.push_back(r);
  }
  for (std::size_t i = 0; i < d.pieces_.size(); ++i) {
    for (std::size_t j = i + 1; j < d.pieces_.size(); ++j) {
      if (*distance_between(d.pieces_[i], d.pieces_[j]) <= 0.0) {
        throw DomainError("slit rays must be pairwise disjoint");
      }
    }
  }
  d.finalize();
  return d;
}

Domain Domain::polygon(std::vector<Point> vertices, Point base_point) {
  const std::size_t n = vertices.size();
  if (n < 3) throw DomainError("polygon needs at least three vertices");
  Domain d;
  d.kind_ = DomainKind::polygon;
  d.bounded_ = true;
  d.base_point_ = base_point;
  for (std::size_t i = 0; i < n; ++i) {
    const Point a = vertices[i];
    const Point b = vertices[(i + 1) % n];
    if (a == b) throw DomainError("polygon has a degenerate edge");
    d.pieces_.push_back(Segment{a, b});
  }
  // Jordan check: non-adjacent edges must not meet.
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const bool adjacent = (j == i + 1) || (i == 0 && j == n - 1);
      if (adjacent) continue;
      const auto& s = std::get<Segment>(d.pieces_[j]);
      if (segment_hit(d.pieces_[i], s.a, s.b)) throw DomainError("polygon is not simple");
    }
  }
  d.vertices_ = std::move(vertices);
  d.finalize();
  return d;
}

Domain Domain::disk(Point center, double radius, Point base_point) {
  if (!(radius > 0.0) || !std::isfinite(radius)) throw DomainError("disk radius must be positive");
  Domain d;
  d.kind_ = DomainKind::disk;
  d.bounded_ = true;
  d.disk_ = {center, radius};
  d.base_point_ = base_point;
  d.pieces_.push_back(FullCircle{center, radius});
  d.finalize();
  return d;
}

Domain Domain::comb(double c, int levels, double r_max, Point base_point) {
  if (!(c > 0.0) || !std::isfinite(c)) throw DomainError("comb growth exponent c must be positive");
  if (levels < 1) throw DomainError("comb needs levels >= 1");
  if (levels > 24) throw DomainError("comb levels above 24 are not supported");
  if (!(r_max > 1.0)) throw DomainError("comb R_max must exceed 1");
  Domain d;
  d.kind_ = DomainKind::comb;
  d.comb_ = {c, levels, r_max};
  d.base_point_ = base_point;
  for (int k = 0; k < 4; ++k) {
    const Point u = Point::polar(1.0, k * kPi / 2.0);
    d.pieces_.push_back(Ray{u, u});
  }
  for (int l = 1; l <= levels; ++l) {
    const double start = std::exp(c * l);
    if (!(start < r_max)) break;
    const int count = 1 << (l + 1);
    for (int k = 0; k < count; ++k) {
      const Point u = Point::polar(1.0, kPi / static_cast<double>(1 << l) * (0.5 + k));
      d.pieces_.push_back(Ray{start * u, u});
    }
  }
  d.finalize();
  return d;
}

bool Domain::contains(Point z) const {
  if (!std::isfinite(z.x) || !std::isfinite(z.y)) return false;
  switch (kind_) {
    case DomainKind::wedge: {
      if (z.x == 0.0 && z.y == 0.0) return false;
      return std::abs(wrap_signed(z.arg() - wedge_.axis)) < 0.5 * wedge_.opening;
    }
    case DomainKind::disk:
      return (z - disk_.center).norm() < disk_.radius;
    case DomainKind::polygon: {
      if (distance_to_boundary(z) <= 0.0) return false;
      bool inside = false;
      const std::size_t n = vertices_.size();
      for (std::size_t i = 0, j = n - 1; i < n; j = i++) {
        const Point a = vertices_[i];
        const Point b = vertices_[j];
        if ((a.y > z.y) != (b.y > z.y)) {
          const double xc = a.x + (z.y - a.y) * (b.x - a.x) / (b.y - a.y);
          if (z.x < xc) inside = !inside;
        }
      }
      return inside;
    }
    case DomainKind::slit_plane:
    case DomainKind::comb:
      return distance_to_boundary(z) > 0.0;
  }
  return false;
}

Domain::NearestPiece Domain::nearest_piece(Point z) const {
  NearestPiece best{std::numeric_limits<double>::infinity(), pieces_.size()};
  if (straight_.real_count > 0) {
    const auto hit = simd::kernels().nearest_segment(straight_.view(), z.x, z.y);
    best = {std::sqrt(hit.dist2), straight_.piece_index[hit.index]};
  }
  for (std::size_t i : curved_) {
    const double dist = distance_to_piece(pieces_[i], z);
    if (dist < best.distance) best = {dist, i};
  }
  return best;
}

double Domain::distance_to_boundary(Point z) const { return nearest_piece(z).distance; }

std::vector<CircleArc> Domain::circle_intersection(double r) const {
  if (!(r > 0.0) || !std::isfinite(r)) throw DomainError("circle radius must be positive and finite");
  const Point origin{0.0, 0.0};
  std::vector<double> angles;
  for (const auto& piece : pieces_) {
    if (auto l = as_line(piece)) {
      const double tol_t = kSnap * r / l->d.norm();
      for (double t : circle_line_roots(l->o, l->d, origin, r, -tol_t, l->tmax + tol_t)) {
        angles.push_back(wrap_angle((l->o + std::clamp(t, 0.0, l->tmax) * l->d).arg()));
      }
      // Endpoints within tolerance of the circle are snapped onto it.
      if (std::abs(l->o.norm() - r) <= kSnap * r) angles.push_back(wrap_angle(l->o.arg()));
      if (!std::isinf(l->tmax)) {
        const Point e = l->o + l->tmax * l->d;
        if (std::abs(e.norm() - r) <= kSnap * r) angles.push_back(wrap_angle(e.arg()));
      }
      continue;
    }
    Point center;
    double radius = 0.0;
    const AngleInterval* arc = nullptr;
    if (const auto* ca = std::get_if<CircularArc>(&piece)) {
      center = ca->center;
      radius = ca->radius;
      arc = &ca->angles;
    } else {
      const auto& fc = std::get<FullCircle>(piece);
      center = fc.center;
      radius = fc.radius;
    }
    const double dist = center.norm();
    if (dist <= kSnap * r && std::abs(radius - r) <= kSnap * r) {
      // The level circle coincides with a boundary circle.
      if (arc == nullptr) return {};
      angles.push_back(wrap_angle(arc->start));
      angles.push_back(wrap_angle(arc->start + arc->width));
      continue;
    }
    if (dist > r + radius + kSnap * r || dist < std::abs(r - radius) - kSnap * r) continue;
    // Circle-circle intersection.
    const double a = (r * r - radius * radius + dist * dist) / (2.0 * dist);
    const double h2 = std::max(r * r - a * a, 0.0);
    const double base = center.arg();
    const double spread = std::atan2(std::sqrt(h2), a);
    for (double ang : {base - spread, base + spread}) {
      if (arc != nullptr) {
        const Point p = Point::polar(r, ang) - center;
        const double off = wrap_angle(p.arg() - arc->start);
        if (off > arc->width + 1e-12 && off < kTwoPi - 1e-12) continue;
      }
      angles.push_back(wrap_angle(ang));
    }
  }
  std::sort(angles.begin(), angles.end());
  std::vector<double> uniq;
  for (double a : angles) {
    if (uniq.empty() || a - uniq.back() > kSnap) uniq.push_back(a);
  }
  if (uniq.size() > 1 && uniq.front() + kTwoPi - uniq.back() <= kSnap) uniq.pop_back();

  std::vector<CircleArc> out;
  if (uniq.empty()) {
    if (contains(Point::polar(r, 0.0))) out.push_back({{0.0, kTwoPi}, true});
    return out;
  }
  for (std::size_t i = 0; i < uniq.size(); ++i) {
    const double a0 = uniq[i];
    const double a1 = (i + 1 < uniq.size()) ? uniq[i + 1] : uniq[0] + kTwoPi;
    const double width = a1 - a0;
    if (width <= kSnap) continue;
    if (contains(Point::polar(r, a0 + 0.5 * width))) out.push_back({{a0, width}, false});
  }
  return out;
}

bool Domain::starlike_about_origin() const {
  if (kind_ == DomainKind::disk) return (disk_.center.norm() < disk_.radius);
  if (kind_ == DomainKind::polygon) return false;
  for (const auto& p : pieces_) {
    const auto* r = std::get_if<Ray>(&p);
    if (r == nullptr) return false;
    const double on = r->origin.norm();
    if (on == 0.0) continue;
    if (std::abs(cross(r->origin, r->dir)) > 1e-12 * on || dot(r->origin, r->dir) <= 0.0) return false;
  }
  return true;
}

double Domain::min_piece_separation(double radius) const {
  double best = std::numeric_limits<double>::infinity();
  auto truncated = [&](const BoundaryPiece& p) -> std::optional<BoundaryPiece> {
    if (const auto* r = std::get_if<Ray>(&p)) {
      if (r->origin.norm() > radius) return std::nullopt;
      return Segment{r->origin, r->origin + (radius + r->origin.norm()) * r->dir};
    }
    return p;
  };
  const std::size_t n = pieces_.size();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (kind_ == DomainKind::polygon && (j == i + 1 || (i == 0 && j == n - 1))) continue;
      if (kind_ == DomainKind::wedge) continue;  // the two rays share the apex
      const auto a = truncated(pieces_[i]);
      const auto b = truncated(pieces_[j]);
      if (!a || !b) continue;
      if (auto dist = distance_between(*a, *b)) best = std::min(best, *dist);
    }
  }
  return best;
}

}  // namespace hardy
