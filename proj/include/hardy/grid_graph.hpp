#pragma once

// Node graph over D used for component labeling and the quasihyperbolic
// metric. A Cartesian core block around the origin is stitched to a log-polar
// block that reaches far out, so one graph spans many decades of radius with a
// fixed relative resolution.

#include <cstdint>
#include <span>
#include <vector>

#include "hardy/geometry.hpp"

namespace hardy {

class ResolutionError : public DomainError {
 public:
  ResolutionError(const std::string& what, double required)
      : DomainError(what), required_grid_h(required) {}
  double required_grid_h;
};

class GridGraph {
 public:
  /// `rel_h` is the relative resolution: angular step of the log-polar block
  /// and core spacing divided by the core half-width. Radii in [r_min, r_max]
  /// are resolved; the graph extends to 16 * r_max.
  static GridGraph build(const Domain& d, Point anchor, double r_min, double r_max, double rel_h);

  std::size_t size() const { return pos_.size(); }
  Point pos(std::size_t i) const { return pos_[i]; }
  double boundary_distance(std::size_t i) const { return dist_[i]; }
  double rel_h() const { return rel_h_; }
  double core_half_width() const { return core_half_; }
  double outer_radius() const { return outer_; }
  double r_min() const { return r_min_; }
  double r_max() const { return r_max_; }

  /// Local node spacing near z.
  double spacing_at(Point z) const;

  struct Edge {
    std::uint32_t to;
    double length;
  };
  std::span<const Edge> neighbours(std::size_t i) const {
    return {adj_.data() + start_[i], adj_.data() + start_[i + 1]};
  }

  /// Nearest node joined to z by an unobstructed segment, or npos.
  std::size_t attach(const Domain& d, Point z) const;

  static constexpr std::size_t npos = static_cast<std::size_t>(-1);

 private:
  std::vector<Point> pos_;
  std::vector<double> dist_;
  std::vector<std::uint32_t> start_;
  std::vector<Edge> adj_;

  double rel_h_ = 0.0;
  double core_half_ = 0.0;
  double core_h_ = 0.0;
  int core_n_ = 0;  // core nodes per side = 2 * core_n_ + 1
  double rho0_ = 0.0;
  double drho_ = 0.0;
  int n_rho_ = 0;
  int n_phi_ = 0;
  double outer_ = 0.0;
  double r_min_ = 0.0;
  double r_max_ = 0.0;
  std::vector<std::int64_t> core_id_;
  std::vector<std::int64_t> lp_id_;
};

}  // namespace hardy
