#include "hardy/grid_graph.hpp"

#include <algorithm>
#include <cmath>

namespace hardy {

namespace {

bool segment_blocked(const Domain& d, Point a, Point b, double da, double db) {
  const double len = (b - a).norm();
  // The segment is covered by the two empty disks around its ends.
  if (da + db > len) return false;
  for (const auto& piece : d.pieces()) {
    if (segment_hit(piece, a, b)) return true;
  }
  return false;
}

}  // namespace

GridGraph GridGraph::build(const Domain& d, Point anchor, double r_min, double r_max, double rel_h) {
  if (!(rel_h > 0.0 && rel_h <= 0.25)) throw DomainError("grid resolution must lie in (0, 0.25]");
  if (!(r_min > anchor.norm()) || !(r_max >= r_min) || !std::isfinite(r_max)) {
    throw DomainError("grid radii must satisfy |anchor| < r_min <= r_max < inf");
  }
  GridGraph g;
  g.rel_h_ = rel_h;
  g.r_min_ = r_min;
  g.r_max_ = r_max;
  const double a = anchor.norm();
  g.core_half_ = std::min(std::max(1.5 * a, 0.5 * d.distance_to_boundary(anchor)), 0.5 * (a + r_min));
  g.core_n_ = static_cast<int>(std::ceil(1.0 / rel_h));
  g.core_h_ = g.core_half_ / g.core_n_;
  g.n_phi_ = static_cast<int>(std::ceil(kTwoPi / rel_h));
  g.drho_ = kTwoPi / g.n_phi_;
  g.rho0_ = std::log(0.5 * g.core_half_);
  g.outer_ = 16.0 * r_max;
  g.n_rho_ = static_cast<int>(std::ceil((std::log(g.outer_) - g.rho0_) / g.drho_)) + 1;

  auto add_node = [&](Point p) -> std::int64_t {
    if (!d.contains(p)) return -1;
    const double dist = d.distance_to_boundary(p);
    if (!(dist > 0.0)) return -1;
    g.pos_.push_back(p);
    g.dist_.push_back(dist);
    return static_cast<std::int64_t>(g.pos_.size() - 1);
  };

  const int side = 2 * g.core_n_ + 1;
  g.core_id_.assign(static_cast<std::size_t>(side) * side, -1);
  for (int i = 0; i < side; ++i) {
    for (int j = 0; j < side; ++j) {
      const Point p{(i - g.core_n_) * g.core_h_, (j - g.core_n_) * g.core_h_};
      g.core_id_[static_cast<std::size_t>(i) * side + j] = add_node(p);
    }
  }
  g.lp_id_.assign(static_cast<std::size_t>(g.n_rho_) * g.n_phi_, -1);
  for (int k = 0; k < g.n_rho_; ++k) {
    const double rad = std::exp(g.rho0_ + k * g.drho_);
    for (int j = 0; j < g.n_phi_; ++j) {
      g.lp_id_[static_cast<std::size_t>(k) * g.n_phi_ + j] = add_node(Point::polar(rad, (j + 0.5) * g.drho_));
    }
  }

  std::vector<std::pair<std::uint32_t, std::uint32_t>> edges;
  auto try_edge = [&](std::int64_t u, std::int64_t v) {
    if (u < 0 || v < 0 || u == v) return;
    if (segment_blocked(d, g.pos_[u], g.pos_[v], g.dist_[u], g.dist_[v])) return;
    edges.emplace_back(static_cast<std::uint32_t>(u), static_cast<std::uint32_t>(v));
  };
  auto core = [&](int i, int j) -> std::int64_t {
    if (i < 0 || j < 0 || i >= side || j >= side) return -1;
    return g.core_id_[static_cast<std::size_t>(i) * side + j];
  };
  auto lp = [&](int k, int j) -> std::int64_t {
    if (k < 0 || k >= g.n_rho_) return -1;
    j = ((j % g.n_phi_) + g.n_phi_) % g.n_phi_;
    return g.lp_id_[static_cast<std::size_t>(k) * g.n_phi_ + j];
  };
  for (int i = 0; i < side; ++i) {
    for (int j = 0; j < side; ++j) {
      const auto u = core(i, j);
      if (u < 0) continue;
      try_edge(u, core(i + 1, j));
      try_edge(u, core(i, j + 1));
      try_edge(u, core(i + 1, j + 1));
      try_edge(u, core(i + 1, j - 1));
    }
  }
  for (int k = 0; k < g.n_rho_; ++k) {
    for (int j = 0; j < g.n_phi_; ++j) {
      const auto u = lp(k, j);
      if (u < 0) continue;
      try_edge(u, lp(k + 1, j));
      try_edge(u, lp(k, j + 1));
      try_edge(u, lp(k + 1, j + 1));
      try_edge(u, lp(k + 1, j - 1));
      const Point p = g.pos_[u];
      if (std::abs(p.x) <= g.core_half_ && std::abs(p.y) <= g.core_half_) {
        const int ci = static_cast<int>(std::lround(p.x / g.core_h_)) + g.core_n_;
        const int cj = static_cast<int>(std::lround(p.y / g.core_h_)) + g.core_n_;
        try_edge(u, core(ci, cj));
      }
    }
  }

  g.start_.assign(g.pos_.size() + 1, 0);
  for (const auto& [u, v] : edges) {
    ++g.start_[u + 1];
    ++g.start_[v + 1];
  }
  for (std::size_t i = 0; i < g.pos_.size(); ++i) g.start_[i + 1] += g.start_[i];
  g.adj_.resize(g.start_.back());
  std::vector<std::uint32_t> fill(g.start_.begin(), g.start_.end() - 1);
  for (const auto& [u, v] : edges) {
    const double len = (g.pos_[u] - g.pos_[v]).norm();
    g.adj_[fill[u]++] = {v, len};
    g.adj_[fill[v]++] = {u, len};
  }
  return g;
}

double GridGraph::spacing_at(Point z) const {
  if (std::abs(z.x) <= core_half_ && std::abs(z.y) <= core_half_) return core_h_;
  return z.norm() * drho_;
}

std::size_t GridGraph::attach(const Domain& d, Point z) const {
  if (!d.contains(z)) return npos;
  const double dz = d.distance_to_boundary(z);
  std::vector<std::int64_t> cand;
  const int side = 2 * core_n_ + 1;
  if (std::abs(z.x) <= core_half_ + core_h_ && std::abs(z.y) <= core_half_ + core_h_) {
    const int ci = static_cast<int>(std::floor(z.x / core_h_)) + core_n_;
    const int cj = static_cast<int>(std::floor(z.y / core_h_)) + core_n_;
    for (int i = ci - 1; i <= ci + 2; ++i) {
      for (int j = cj - 1; j <= cj + 2; ++j) {
        if (i >= 0 && j >= 0 && i < side && j < side) cand.push_back(core_id_[static_cast<std::size_t>(i) * side + j]);
      }
    }
  }
  const double rad = z.norm();
  if (rad > 0.0) {
    const int k0 = static_cast<int>(std::floor((std::log(rad) - rho0_) / drho_));
    const int j0 = static_cast<int>(std::floor(wrap_angle(z.arg()) / drho_ - 0.5));
    for (int k = k0 - 1; k <= k0 + 2; ++k) {
      if (k < 0 || k >= n_rho_) continue;
      for (int j = j0 - 1; j <= j0 + 2; ++j) {
        const int jj = ((j % n_phi_) + n_phi_) % n_phi_;
        cand.push_back(lp_id_[static_cast<std::size_t>(k) * n_phi_ + jj]);
      }
    }
  }
  std::size_t best = npos;
  double best_len = std::numeric_limits<double>::infinity();
  for (auto c : cand) {
    if (c < 0) continue;
    const double len = (pos_[c] - z).norm();
    if (len >= best_len) continue;
    if (segment_blocked(d, z, pos_[c], dz, dist_[c])) continue;
    best = static_cast<std::size_t>(c);
    best_len = len;
  }
  return best;
}

}  // namespace hardy
