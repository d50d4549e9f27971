#pragma once

// Extremal distance between two boundary sets by the Dirichlet principle:
// potential 0 on E, 1 on F, zero normal derivative elsewhere; the extremal
// distance is the reciprocal of the Dirichlet energy.
//
// Discretisation is a 5-point finite-volume scheme on a tensor grid in either
// Cartesian or log-polar coordinates. Laplace's equation and the Dirichlet
// integral are conformally invariant, so the log-polar chart (rho, phi) with
// z = c + exp(rho + i phi) needs no metric factors. Boundaries that do not sit
// on grid lines enter through edge cuts: Dirichlet cuts shorten the edge
// (Shortley-Weller), Neumann cuts remove it.

#include <stdexcept>
#include <vector>

#include "hardy/geometry.hpp"

namespace hardy {

class SolverError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class Chart { cartesian, log_polar };

struct TensorGrid {
  std::vector<double> x;  // rho for log-polar
  std::vector<double> y;  // phi for log-polar
  bool periodic_y = false;
  double period = kTwoPi;
  Chart chart = Chart::cartesian;

  static std::vector<double> uniform(double a, double b, std::size_t n);
  /// Nodes from a to b whose spacing starts at h0 next to `fine_end` (a or b)
  /// and grows by `growth` up to h_max.
  static std::vector<double> graded(double a, double b, double h0, double growth, double h_max, bool fine_at_b);
};

struct NodeClass {
  enum Kind { free, dirichlet, outside } kind = free;
  double value = 0.0;
};

struct Cut {
  enum Kind { none, neumann, dirichlet } kind = none;
  double t = 1.0;  // fraction of the edge from its first node
  double value = 0.0;
};

/// Boundary description in chart coordinates.
class ModulusGeometry {
 public:
  virtual ~ModulusGeometry() = default;
  virtual NodeClass classify(Point p) const = 0;
  /// First boundary met walking from the free node a towards b.
  virtual Cut cut(Point a, Point b) const = 0;
  virtual bool inside(Point p) const = 0;
};

struct ModulusProblem {
  TensorGrid grid;
  const ModulusGeometry* geometry = nullptr;
  double energy_scale = 1.0;  // copies of the computed region (symmetry)
};

/// Sparse direct factorisation or Jacobi-preconditioned conjugate gradients
/// on the vectorised stencil; automatic picks direct for moderate sizes.
enum class SolveMethod { automatic, direct, pcg };

struct SolveOptions {
  SolveMethod method = SolveMethod::automatic;
  double tol = 1e-10;
  int max_iter = 200000;
  const std::vector<double>* warm_start = nullptr;  // pcg only
};

struct ModulusResult {
  double extremal_distance = 0.0;
  double energy = 0.0;
  int iterations = 0;
  double residual = 0.0;
  std::vector<double> u;  // node values, x fastest
};

ModulusResult extremal_distance(const ModulusProblem& p, const SolveOptions& opt = {});

}  // namespace hardy
