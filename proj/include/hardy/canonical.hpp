#pragma once

// Model modulus problems and the universal single-arc tables.
//
// Lambda(theta) is the extremal distance in the unit disk between the radius
// [-1, 0] and the arc {e^{it}: |t| <= theta}. It is solved after w = sqrt(z),
// which opens the slit disk onto the right half disk; the problem is then
// symmetric about the real axis and only the quarter disk is meshed, in
// log-polar coordinates so the grid can be refined towards the arc endpoint.
//
// Delta(theta) is the reduced extremal distance from 0 to the same arc,
// lim_{eps->0} [ ext(|z|=eps, arc) - ext(|z|=eps, |z|=1) ], solved on the
// half annulus in log-polar coordinates at two eps values and extrapolated.

#include <cstdint>
#include <string>
#include <vector>

#include "hardy/modulus.hpp"

namespace hardy {

/// Rectangle [0,w] x [0,h]; E, F the vertical sides.
double rectangle_extremal_distance(double w, double h, double grid_h);

/// Annulus eps < |z| < outer between its circles, with optional radial slits
/// (Neumann) at the given angles, in log-polar coordinates with n_phi angles.
double annulus_extremal_distance(double eps, double outer, const std::vector<double>& slit_angles, int n_phi);

/// Same annulus on a Cartesian grid of spacing grid_h (scaled to outer = 1).
double annulus_extremal_distance_cartesian(double eps, double outer, const std::vector<double>& slit_angles,
                                           double grid_h);

/// Unit disk minus the segment [0, s], between the segment and the circle.
double grotzsch_extremal_distance(double s, double grid_h);

/// Two-sided discrete extremal distance: the direct solve is a lower bound
/// and the reciprocal of the conjugate solve an upper bound.
struct ExtBracket {
  double lower = 0.0;
  double upper = 0.0;
  int iterations = 0;
  double value() const { return 0.5 * (lower + upper); }
};

/// Lambda(theta) from the quarter-disk reduction with spacing grid_h.
ExtBracket lambda_quarter_disk(double theta, double grid_h);
/// Lambda(theta) on the slit disk itself (Cartesian cross-check).
double lambda_slit_disk(double theta, double grid_h);

/// ext(|z| = eps, arc of half-angle theta) on the half annulus in log-polar
/// coordinates, refined towards the arc endpoint.
ExtBracket arc_annulus(double theta, double eps, double grid_h);

struct CanonicalTables {
  std::vector<double> theta;
  std::vector<double> lambda;
  std::vector<double> delta;
  double grid_h = 0.0;
  double eps1 = 0.0;
  double eps2 = 0.0;
  std::vector<std::string> violations;

  /// FNV-1a over the printed table rows.
  std::uint64_t checksum() const;
};

std::vector<double> default_theta_grid(int count = 64);

CanonicalTables build_canonical_tables(const std::vector<double>& theta_grid, double grid_h, double eps1 = 1e-2,
                                       double eps2 = 1e-3);

/// Interpolated table values at theta = pi * omega.
double lambda_star(double omega, const CanonicalTables& t);
double delta_star(double omega, const CanonicalTables& t);

void write_tables_csv(const CanonicalTables& t, const std::string& path);
/// Loads a table file; throws if the schema or stored checksum does not match.
CanonicalTables read_tables_csv(const std::string& path);

}  // namespace hardy
