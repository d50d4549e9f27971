#pragma once

// Quasihyperbolic distance k_D(z, .) = inf over paths of the integral of
// |dw| / dist(w, dD), computed by Dijkstra on the grid graph, and the Koebe
// bracket k/2 <= d_D <= 2k for the hyperbolic distance of a simply connected
// domain (curvature -1).

#include <vector>

#include "hardy/geometry.hpp"
#include "hardy/grid_graph.hpp"

namespace hardy {

/// Hyperbolic distance from 0 to s in the unit disk, density 2 / (1 - |z|^2).
double disk_hyperbolic_distance(double s);

struct MetricBracket {
  double k = 0.0;
  double d_low = 0.0;   // k / 2
  double d_high = 0.0;  // 2 k
  static MetricBracket from_k(double k) { return {k, 0.5 * k, 2.0 * k}; }
};

/// Single-source quasihyperbolic distances from z over a graph resolving
/// radii in [r_min, r_max]. Edge weights use the harmonic mean of the two
/// endpoint densities 1/dist.
class QuasihyperbolicField {
 public:
  QuasihyperbolicField(const Domain& d, Point z, double r_min, double r_max, double grid_h);
  QuasihyperbolicField(const Domain& d, Point z, GridGraph graph);

  /// Distance to a point; throws DomainError when it cannot be attached or reached.
  MetricBracket to_point(Point w) const;
  /// Distance to D ∩ {|w| = r}; +inf in k when the circle is not reached.
  MetricBracket to_level(double r) const;

  const GridGraph& graph() const { return graph_; }

 private:
  const Domain& d_;
  Point z_;
  GridGraph graph_;
  std::vector<double> dist_;
};

/// One-shot forms.
MetricBracket quasihyperbolic_distance(const Domain& d, Point z, Point target, double grid_h);
MetricBracket quasihyperbolic_distance(const Domain& d, Point z, double level_r, double grid_h);

}  // namespace hardy
