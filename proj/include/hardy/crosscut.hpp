#pragma once

// Crosscuts of D on the circle |z| = r: the arcs of D ∩ {|z| = r} that bound
// D_0, the component of D ∩ {|z| < r} holding the base point.

#include <vector>

#include "hardy/geometry.hpp"
#include "hardy/grid_graph.hpp"

namespace hardy {

struct Crosscut {
  double radius = 0.0;
  AngleInterval angles;
  int id = 0;
  bool bounds_d0 = true;
  bool far_side_unbounded = false;
  bool closed = false;  // whole circle inside D

  double length() const { return radius * angles.width; }
  Point midpoint() const { return Point::polar(radius, angles.mid()); }
};

struct CrosscutDecomposition {
  double radius = 0.0;
  std::vector<Crosscut> crosscuts;
  int pruned_count = 0;
  double grid_resolution = 0.0;

  int bounded_far_sides() const;
};

/// Throws ResolutionError if distinct boundary pieces inside the graph window
/// are closer than two local grid spacings.
void check_resolution(const Domain& d, const GridGraph& g);

CrosscutDecomposition crosscut_decomposition(const Domain& d, const GridGraph& g, double r);
CrosscutDecomposition crosscut_decomposition(const Domain& d, double r, double grid_h);

}  // namespace hardy
