#pragma once

// Reduced extremal distance from the base point to a whole level set,
//   delta_{D_r}(w0, F_r) = lim_{eps->0} [ ext(|z-w0|=eps, F_r) - ext(|z-w0|=eps, dD_r) ],
// with D_r = D ∩ {|z| < r} and F_r = D ∩ {|z| = r}. Both terms are solved in
// log-polar coordinates about w0, so the grid extent grows like log r.

#include "hardy/geometry.hpp"

namespace hardy {

struct ReducedOptions {
  double eps1 = 1e-2;
  double eps2 = 1e-3;
  double grid_h = 1.0 / 64;  // angular step is 2 * grid_h
};

struct ReducedResult {
  double delta = 0.0;  // extrapolated to eps -> 0
  double delta_eps1 = 0.0;
  double delta_eps2 = 0.0;
  int n_phi = 0;
  std::size_t unknowns = 0;
  bool eps_warning = false;  // the two eps values differ by more than 5%
};

/// Throws DomainError when the base point is within eps1 of the boundary or
/// outside |z| < r, and SolverError when the discrete problem is ill-posed
/// (for instance F_r does not meet the component of w0).
ReducedResult reduced_extremal_distance_full(const Domain& d, double r, const ReducedOptions& opt = {});

}  // namespace hardy
