#pragma once

// Walk-on-spheres estimates of harmonic measure.
//
// Crosscut measures decay like r^{-h} and reach 1e-12 on the test domains, so
// component and full-level-set measures are estimated by fixed-effort
// splitting on a ladder of radii rho_i = L0 * s^i. Every path from the base
// point to the circle |z| = r crosses each rung below r, so the measure is the
// product of per-rung passage fractions times the last-leg fraction. Rungs
// below r are shared by all crosscuts and all radii.

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "hardy/crosscut.hpp"
#include "hardy/geometry.hpp"

namespace hardy {

struct WosConfig {
  double eps_shell = 1e-4;  // relative to max(|z|, local domain scale)
  long max_steps = 100000;
  long n_samples = 100000;
  std::uint64_t rng_seed = 1;
  double rung_ratio = 1.2840254166877414;  // e^{1/4}
  double prune_k = 2.0;
  bool prune = true;
};

struct MeasureEstimate {
  double mean = 0.0;
  double std_err = 0.0;
  long n_samples = 0;
  long n_censored = 0;

  bool valid() const { return n_samples > 0 && n_censored <= n_samples / 1000; }
};

struct Absorption {
  bool on_crosscut = false;
  std::size_t piece = 0;
  Point at;
};

using AbsorptionTarget = std::function<bool(const Absorption&)>;

/// Plain walk-on-spheres from z, absorbed on the boundary of D and on `extra`.
MeasureEstimate harmonic_measure(const Domain& d, const std::optional<Crosscut>& extra, Point z,
                                 const AbsorptionTarget& target, const WosConfig& cfg);

struct ComponentMeasures {
  double radius = 0.0;
  std::vector<MeasureEstimate> per_crosscut;
  std::vector<bool> pruned;
  int star_index = -1;
  MeasureEstimate star;
  MeasureEstimate full;
  std::string diagnostic;
};

class RadialLadder {
 public:
  RadialLadder(const Domain& d, const WosConfig& cfg);

  /// omega of the whole level set {|z| = r} ∩ D at the base point.
  MeasureEstimate full_measure(double r);
  /// omega_{B_k}(w0, C_k), B_k the component of D \ C_k holding the base point.
  MeasureEstimate crosscut_measure(const Crosscut& c);
  ComponentMeasures component_measures(const CrosscutDecomposition& dec);

  double rung(std::size_t i) const;
  std::size_t rungs_below(double r) const;

 private:
  struct Stage {
    double pass = 0.0;
    long censored = 0;
    std::vector<Point> entries;
  };
  void extend_to(std::size_t count);
  std::vector<Point> starts(std::size_t level, std::uint64_t tag) const;
  MeasureEstimate combine(std::size_t level, long successes, long censored) const;

  const Domain& d_;
  WosConfig cfg_;
  double scale_ = 1.0;
  double l0_ = 1.0;
  std::vector<Stage> stages_;
};

ComponentMeasures component_measures(const Domain& d, const CrosscutDecomposition& dec, const WosConfig& cfg);

}  // namespace hardy
