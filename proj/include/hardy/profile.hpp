#pragma once

// Per-radius profiles of the level-set quantities on a geometric r grid:
// harmonic measure of the dominant crosscut and of the whole level set,
// their images under the canonical tables, the quasihyperbolic bracket and,
// on request, the reduced extremal distance of the whole level set.

#include <cstdint>
#include <limits>
#include <string>
#include <vector>

#include "hardy/canonical.hpp"
#include "hardy/geometry.hpp"
#include "hardy/hyperbolic.hpp"
#include "hardy/reduced.hpp"
#include "hardy/wos.hpp"

namespace hardy {

struct ProfileConfig {
  WosConfig wos;
  double grid_h = 1.0 / 64;  // crosscut labelling and quasihyperbolic graph
  bool with_delta_full = false;
  ReducedOptions reduced;
};

struct RadiusRecord {
  double r = 0.0;
  bool valid = false;
  bool empty = false;  // the circle misses D
  std::string error;
  MeasureEstimate omega_star;
  MeasureEstimate omega_full;
  double lambda_star = std::numeric_limits<double>::quiet_NaN();
  double delta_star = std::numeric_limits<double>::quiet_NaN();
  double delta_full = std::numeric_limits<double>::quiet_NaN();
  MetricBracket k;
  int n_crosscuts = 0;
  int pruned = 0;
  int bounded_far_sides = 0;
  std::vector<std::string> flags;
};

struct LevelSetProfile {
  std::string domain_kind;
  Point base_point;
  std::uint64_t seed = 0;
  std::vector<RadiusRecord> rows;
};

/// r_j = r0 q^j, j < count, with radii within 1% above or below a radius
/// where a boundary piece starts moved out by 2%.
std::vector<double> geometric_r_grid(const Domain& d, double r0, double q, int count);

LevelSetProfile profile(const Domain& d, const std::vector<double>& r_grid, const CanonicalTables& tables,
                        const ProfileConfig& cfg);

struct Violation {
  double r = 0.0;
  std::string check;
  double margin = 0.0;  // how far past the bound, in the bound's own units
};

/// Checks the structural invariants of a profile; never throws.
std::vector<Violation> validate_profile(const LevelSetProfile& p);

void write_profile_csv(const LevelSetProfile& p, const std::string& path);
LevelSetProfile read_profile_csv(const std::string& path);

}  // namespace hardy
