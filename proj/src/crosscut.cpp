#include "hardy/crosscut.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <sstream>

namespace hardy {

int CrosscutDecomposition::bounded_far_sides() const {
  return static_cast<int>(std::count_if(crosscuts.begin(), crosscuts.end(),
                                        [](const Crosscut& c) { return !c.far_side_unbounded; }));
}

void check_resolution(const Domain& d, const GridGraph& g) {
  if (d.kind() == DomainKind::wedge) return;
  const double reach = g.r_max();
  const auto& pieces = d.pieces();
  const std::size_t n = pieces.size();
  double worst = std::numeric_limits<double>::infinity();
  double sep_at_worst = 0.0;
  double rad_at_worst = 0.0;
  auto clip = [&](const BoundaryPiece& p) -> std::optional<std::pair<BoundaryPiece, double>> {
    if (const auto* r = std::get_if<Ray>(&p)) {
      const double o = r->origin.norm();
      if (o > reach) return std::nullopt;
      return std::make_pair(BoundaryPiece{Segment{r->origin, r->origin + (reach + o) * r->dir}}, o);
    }
    if (const auto* s = std::get_if<Segment>(&p)) {
      return std::make_pair(p, std::min(s->a.norm(), s->b.norm()));
    }
    return std::nullopt;
  };
  for (std::size_t i = 0; i < n; ++i) {
    const auto a = clip(pieces[i]);
    if (!a) continue;
    for (std::size_t j = i + 1; j < n; ++j) {
      if (d.kind() == DomainKind::polygon && (j == i + 1 || (i == 0 && j == n - 1))) continue;
      const auto b = clip(pieces[j]);
      if (!b) continue;
      const double sep = *distance_between(a->first, b->first);
      const double rad = std::max(a->second, b->second);
      const double h = std::max(g.spacing_at(Point{rad, 0.0}), g.spacing_at(Point{0.0, 0.0}));
      const double ratio = sep / h;
      if (ratio < worst) {
        worst = ratio;
        sep_at_worst = sep;
        rad_at_worst = rad;
      }
    }
  }
  if (worst < 2.0) {
    const double need = g.rel_h() * worst / 2.0;
    std::ostringstream msg;
    msg << "grid resolution " << g.rel_h() << " cannot separate boundary pieces " << sep_at_worst
        << " apart near radius " << rad_at_worst << "; need grid_h <= " << need;
    throw ResolutionError(msg.str(), need);
  }
}

CrosscutDecomposition crosscut_decomposition(const Domain& d, const GridGraph& g, double r) {
  const Point w0 = d.base_point();
  if (!(r > w0.norm())) throw DomainError("crosscut radius must exceed |base point|");
  if (r < g.r_min() * (1 - 1e-12) || r > g.r_max() * (1 + 1e-12)) {
    throw DomainError("radius outside the grid graph window");
  }
  CrosscutDecomposition out;
  out.radius = r;
  out.grid_resolution = g.rel_h();
  const auto arcs = d.circle_intersection(r);
  if (arcs.empty()) return out;
  if (arcs.size() == 1 && arcs[0].closed) {
    Crosscut c;
    c.radius = r;
    c.angles = arcs[0].angles;
    c.closed = true;
    c.far_side_unbounded = !d.bounded();
    out.crosscuts.push_back(c);
    return out;
  }

  const std::size_t src = g.attach(d, w0);
  if (src == GridGraph::npos) throw DomainError("base point is not connected to the grid graph");
  const std::size_t n = g.size();
  std::vector<char> in_d0(n, 0);
  std::deque<std::size_t> queue;
  if (g.pos(src).norm() < r) {
    in_d0[src] = 1;
    queue.push_back(src);
  }
  while (!queue.empty()) {
    const std::size_t u = queue.front();
    queue.pop_front();
    for (const auto& e : g.neighbours(u)) {
      if (in_d0[e.to] || !(g.pos(e.to).norm() < r)) continue;
      in_d0[e.to] = 1;
      queue.push_back(e.to);
    }
  }

  // Seeds of each arc's far side: outer ends of edges leaving D_0 through it.
  std::vector<std::vector<std::size_t>> seeds(arcs.size());
  for (std::size_t u = 0; u < n; ++u) {
    if (!in_d0[u]) continue;
    const Point a = g.pos(u);
    for (const auto& e : g.neighbours(u)) {
      const Point b = g.pos(e.to);
      if (b.norm() < r) continue;
      const Point dv = b - a;
      const double A = dv.norm2();
      const double B = 2.0 * dot(a, dv);
      const double C = a.norm2() - r * r;
      const double t = (-B + std::sqrt(std::max(B * B - 4.0 * A * C, 0.0))) / (2.0 * A);
      const double ang = wrap_angle((a + t * dv).arg());
      for (std::size_t k = 0; k < arcs.size(); ++k) {
        if (arcs[k].angles.contains(ang)) {
          seeds[k].push_back(e.to);
          break;
        }
      }
    }
  }

  std::vector<int> seen(n, -1);
  int id = 0;
  for (std::size_t k = 0; k < arcs.size(); ++k) {
    if (seeds[k].empty()) continue;
    Crosscut c;
    c.radius = r;
    c.angles = arcs[k].angles;
    c.id = id++;
    const int stamp = static_cast<int>(k);
    bool unbounded = false;
    for (std::size_t s : seeds[k]) {
      if (seen[s] == stamp) continue;
      seen[s] = stamp;
      queue.push_back(s);
    }
    while (!queue.empty() && !unbounded) {
      const std::size_t u = queue.front();
      queue.pop_front();
      if (g.pos(u).norm() > 15.0 * r) {
        unbounded = true;
        break;
      }
      for (const auto& e : g.neighbours(u)) {
        if (seen[e.to] == stamp || in_d0[e.to]) continue;
        seen[e.to] = stamp;
        queue.push_back(e.to);
      }
    }
    queue.clear();
    c.far_side_unbounded = unbounded;
    out.crosscuts.push_back(c);
  }
  return out;
}

CrosscutDecomposition crosscut_decomposition(const Domain& d, double r, double grid_h) {
  const GridGraph g = GridGraph::build(d, d.base_point(), r, r, grid_h);
  check_resolution(d, g);
  return crosscut_decomposition(d, g, r);
}

}  // namespace hardy
