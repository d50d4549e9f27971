#pragma once

// Closed-form reference values, independent of the library solvers.

#include <cmath>
#include <numbers>

namespace oracle {

inline double agm(double a, double b) {
  for (int i = 0; i < 64 && std::abs(a - b) > 1e-16 * a; ++i) {
    const double m = 0.5 * (a + b);
    b = std::sqrt(a * b);
    a = m;
  }
  return a;
}

/// K'(k) / K(k) through the arithmetic-geometric mean.
inline double elliptic_ratio(double k) { return agm(1.0, std::sqrt(1.0 - k * k)) / agm(1.0, k); }

/// Extremal distance in the unit disk between [-1, 0] and the arc |t| <= theta.
/// After w = sqrt(z) and a Moebius map to the upper half-plane the
/// quadrilateral has vertices -1/k, -1, 1, 1/k.
inline double lambda(double theta) {
  const double pi = std::numbers::pi;
  const double a = std::pow(std::tan(pi / 4 - theta / 4), 2);
  const double c = 1.0 / (a * a);
  const double k = 1.0 / ((2 * c - 1) + std::sqrt((2 * c - 1) * (2 * c - 1) - 1));
  return 2.0 / elliptic_ratio(k);
}

/// Reduced extremal distance from 0 to the arc |t| <= theta in the unit disk.
inline double delta(double theta) { return -std::log(std::sin(theta / 2)) / std::numbers::pi; }

/// Extremal distance between [0, s] and the unit circle: mu(s) / (2 pi) with
/// mu(s) = (pi / 2) K'(s) / K(s).
inline double grotzsch(double s) { return 0.25 * elliptic_ratio(s); }

}  // namespace oracle

#include <complex>

namespace oracle {

/// Harmonic measure at z of the arc |w| = r of the sector {|arg w - axis| < opening/2, |w| < r}.
inline double sector_arc_measure(double opening, double axis, double r, std::complex<double> z) {
  const double pi = std::numbers::pi;
  const auto zeta = std::pow(z * std::polar(1.0, opening / 2 - axis), pi / opening);
  const double R = std::pow(r, pi / opening);
  return 2.0 / pi * std::arg((R + zeta) / (R - zeta));
}

}  // namespace oracle
