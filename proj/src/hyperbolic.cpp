#include "hardy/hyperbolic.hpp"

#include <cmath>
#include <functional>
#include <limits>
#include <queue>
#include <utility>

namespace hardy {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double edge_weight(double len, double da, double db) { return len * 2.0 / (da + db); }

}  // namespace

double disk_hyperbolic_distance(double s) {
  if (!(s >= 0.0 && s < 1.0)) throw DomainError("disk_hyperbolic_distance needs s in [0, 1)");
  return std::log1p(s) - std::log1p(-s);
}

QuasihyperbolicField::QuasihyperbolicField(const Domain& d, Point z, double r_min, double r_max, double grid_h)
    : QuasihyperbolicField(d, z, GridGraph::build(d, z, r_min, r_max, grid_h)) {}

QuasihyperbolicField::QuasihyperbolicField(const Domain& d, Point z, GridGraph graph)
    : d_(d), z_(z), graph_(std::move(graph)) {
  const std::size_t src = graph_.attach(d, z);
  if (src == GridGraph::npos) throw DomainError("start point cannot be joined to the grid");
  dist_.assign(graph_.size(), kInf);
  const double dz = d.distance_to_boundary(z);
  using Item = std::pair<double, std::uint32_t>;
  std::priority_queue<Item, std::vector<Item>, std::greater<>> pq;
  dist_[src] = edge_weight((graph_.pos(src) - z).norm(), dz, graph_.boundary_distance(src));
  pq.push({dist_[src], static_cast<std::uint32_t>(src)});
  while (!pq.empty()) {
    const auto [du, u] = pq.top();
    pq.pop();
    if (du > dist_[u]) continue;
    const double da = graph_.boundary_distance(u);
    for (const auto& e : graph_.neighbours(u)) {
      const double nd = du + edge_weight(e.length, da, graph_.boundary_distance(e.to));
      if (nd < dist_[e.to]) {
        dist_[e.to] = nd;
        pq.push({nd, e.to});
      }
    }
  }
}

MetricBracket QuasihyperbolicField::to_point(Point w) const {
  const std::size_t t = graph_.attach(d_, w);
  if (t == GridGraph::npos) throw DomainError("target point cannot be joined to the grid");
  if (!std::isfinite(dist_[t])) throw DomainError("target point is not reachable at this resolution");
  const double dw = d_.distance_to_boundary(w);
  double k = dist_[t] + edge_weight((graph_.pos(t) - w).norm(), graph_.boundary_distance(t), dw);
  // Points closer than the grid spacing are joined directly.
  const double dz = d_.distance_to_boundary(z_);
  const double gap = (w - z_).norm();
  if (gap < std::min(dz, graph_.spacing_at(z_))) k = std::min(k, edge_weight(gap, dz, dw));
  return MetricBracket::from_k(k);
}

MetricBracket QuasihyperbolicField::to_level(double r) const {
  if (!(r > 0.0)) throw DomainError("level radius must be positive");
  const double rz = z_.norm();
  if (rz == r) return MetricBracket::from_k(0.0);
  // Nodes on z's side of the circle; the crossing point of each edge is
  // reached with a linearly interpolated boundary distance.
  const bool z_inside = rz < r;
  double best = kInf;
  for (std::size_t u = 0; u < graph_.size(); ++u) {
    if (!std::isfinite(dist_[u])) continue;
    const Point pu = graph_.pos(u);
    if ((pu.norm() < r) != z_inside) continue;
    for (const auto& e : graph_.neighbours(u)) {
      const Point pv = graph_.pos(e.to);
      if ((pv.norm() < r) == z_inside) continue;
      const Point dv = pv - pu;
      const double A = dv.norm2();
      const double B = 2.0 * dot(pu, dv);
      const double C = pu.norm2() - r * r;
      const double sq = std::sqrt(std::max(B * B - 4.0 * A * C, 0.0));
      double t = z_inside ? (-B + sq) / (2.0 * A) : (-B - sq) / (2.0 * A);
      t = std::clamp(t, 0.0, 1.0);
      const double da = graph_.boundary_distance(u);
      const double dc = da + t * (graph_.boundary_distance(e.to) - da);
      best = std::min(best, dist_[u] + edge_weight(t * e.length, da, dc));
    }
  }
  return MetricBracket::from_k(best);
}

MetricBracket quasihyperbolic_distance(const Domain& d, Point z, Point target, double grid_h) {
  const double lo = std::max(z.norm(), target.norm());
  QuasihyperbolicField f(d, z, std::max(lo, 1e-9) * (1.0 + 1e-9) + 1e-12, std::max(lo, 1e-9) * 2.0 + 1e-12, grid_h);
  return f.to_point(target);
}

MetricBracket quasihyperbolic_distance(const Domain& d, Point z, double level_r, double grid_h) {
  if (!(level_r > z.norm())) throw DomainError("level radius must exceed |z|");
  QuasihyperbolicField f(d, z, level_r, level_r, grid_h);
  return f.to_level(level_r);
}

}  // namespace hardy
