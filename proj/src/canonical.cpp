#include "hardy/canonical.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace hardy {

namespace {

constexpr double kTiny = 1e-12;
constexpr double kH0 = 64.0;  // finest step relative to the base step
constexpr double kRhoMax = 0.25;

// First t in [0, 1] where a + t(b - a) crosses |z| = R.
std::optional<double> circle_cross(Point a, Point b, double R) {
  const bool ia = a.norm() < R;
  const bool ib = b.norm() < R;
  if (ia == ib) return std::nullopt;
  const Point d = b - a;
  const double A = d.norm2();
  const double B = 2.0 * dot(a, d);
  const double C = a.norm2() - R * R;
  const double sq = std::sqrt(std::max(B * B - 4.0 * A * C, 0.0));
  const double t = ia ? (-B + sq) / (2.0 * A) : (-B - sq) / (2.0 * A);
  return std::clamp(t, 0.0, 1.0);
}

std::size_t nodes_for(double length, double h) { return static_cast<std::size_t>(std::llround(length / h)) + 1; }

class RectangleGeometry final : public ModulusGeometry {
 public:
  explicit RectangleGeometry(double w) : w_(w) {}
  NodeClass classify(Point p) const override {
    if (p.x <= kTiny) return {NodeClass::dirichlet, 0.0};
    if (p.x >= w_ - kTiny) return {NodeClass::dirichlet, 1.0};
    return {};
  }
  Cut cut(Point, Point) const override { return {}; }
  bool inside(Point) const override { return true; }

 private:
  double w_;
};

// Radial slits in log-polar coordinates block angular edges.
class LogPolarAnnulus final : public ModulusGeometry {
 public:
  LogPolarAnnulus(double rho0, double rho1, std::vector<double> slits) : rho0_(rho0), rho1_(rho1), slits_(std::move(slits)) {}
  NodeClass classify(Point p) const override {
    if (p.x <= rho0_ + kTiny) return {NodeClass::dirichlet, 0.0};
    if (p.x >= rho1_ - kTiny) return {NodeClass::dirichlet, 1.0};
    return {};
  }
  Cut cut(Point a, Point b) const override {
    if (a.y == b.y) return {};
    const double lo = std::min(a.y, b.y);
    const double hi = std::max(a.y, b.y);
    for (double s : slits_) {
      for (double k : {-1.0, 0.0, 1.0}) {
        const double ang = s + k * kTwoPi;
        if (ang > lo && ang < hi) return {Cut::neumann, (ang - a.y) / (b.y - a.y), 0.0};
      }
    }
    return {};
  }
  bool inside(Point) const override { return true; }

 private:
  double rho0_;
  double rho1_;
  std::vector<double> slits_;
};

class CartesianAnnulus final : public ModulusGeometry {
 public:
  CartesianAnnulus(double eps, std::vector<double> slits) : eps_(eps) {
    for (double s : slits) slits_.push_back(Segment{Point::polar(eps, s), Point::polar(1.0, s)});
  }
  NodeClass classify(Point p) const override {
    const double r = p.norm();
    if (r <= eps_) return {NodeClass::dirichlet, 0.0};
    if (r >= 1.0) return {NodeClass::dirichlet, 1.0};
    for (const auto& s : slits_) {
      if (distance_to_piece(s, p) == 0.0) return {NodeClass::outside, 0.0};
    }
    return {};
  }
  Cut cut(Point a, Point b) const override {
    Cut best;
    best.t = 2.0;
    if (auto t = circle_cross(a, b, 1.0); t && *t < best.t) best = {Cut::dirichlet, *t, 1.0};
    if (auto t = circle_cross(a, b, eps_); t && *t < best.t) best = {Cut::dirichlet, *t, 0.0};
    for (const auto& s : slits_) {
      if (auto t = segment_hit(s, a, b); t && *t < best.t) best = {Cut::neumann, *t, 0.0};
    }
    if (best.t > 1.0) return {};
    return best;
  }
  bool inside(Point p) const override {
    const double r = p.norm();
    return r > eps_ && r < 1.0;
  }

 private:
  double eps_;
  std::vector<BoundaryPiece> slits_;
};

// Upper half of the unit disk minus [0, s]; the real axis off the slit is a
// symmetry line.
class GrotzschHalf final : public ModulusGeometry {
 public:
  explicit GrotzschHalf(double s) : s_(s) {}
  NodeClass classify(Point p) const override {
    if (p.norm() >= 1.0) return {NodeClass::dirichlet, 1.0};
    if (std::abs(p.y) <= kTiny && p.x >= -kTiny && p.x <= s_ + kTiny) return {NodeClass::dirichlet, 0.0};
    return {};
  }
  Cut cut(Point a, Point b) const override {
    if (auto t = circle_cross(a, b, 1.0)) return {Cut::dirichlet, *t, 1.0};
    return {};
  }
  bool inside(Point p) const override { return p.y >= 0.0 && p.norm() < 1.0; }

 private:
  double s_;
};

// Strip rho0 < rho < 0, 0 < phi < phi_max in log-polar coordinates. The arc
// phi <= a of the unit circle is F; E is the inner edge (annulus) or the edge
// phi = phi_max (quarter disk). The conjugate problem puts 0 and 1 on the two
// remaining sides and makes E and F Neumann; its extremal distance is the
// reciprocal, and both discrete values are one-sided.
class ArcStrip final : public ModulusGeometry {
 public:
  ArcStrip(double rho0, double phi_max, double a, bool annulus, bool conjugate)
      : rho0_(rho0), phi_max_(phi_max), a_(a), annulus_(annulus), conjugate_(conjugate) {}
  NodeClass classify(Point p) const override {
    const bool outer = p.x >= -kTiny;
    const bool inner = p.x <= rho0_ + kTiny;
    const bool top = p.y >= phi_max_ - kTiny;
    const bool bottom = p.y <= kTiny;
    if (!conjugate_) {
      if (annulus_ ? inner : top) return {NodeClass::dirichlet, 0.0};
      if (outer && p.y <= a_ + kTiny) return {NodeClass::dirichlet, 1.0};
      return {};
    }
    if (bottom || (!annulus_ && inner)) return {NodeClass::dirichlet, 0.0};
    if ((outer && p.y >= a_ - kTiny) || (annulus_ && top)) return {NodeClass::dirichlet, 1.0};
    return {};
  }
  Cut cut(Point, Point) const override { return {}; }
  bool inside(Point) const override { return true; }

 private:
  double rho0_;
  double phi_max_;
  double a_;
  bool annulus_;
  bool conjugate_;
};

// Angular nodes on [0, phi_max] with a node at a and geometric refinement
// towards it, where the potential has a square-root singularity.
std::vector<double> angles_towards(double a, double phi_max, double h, double growth) {
  const double h0 = h / kH0;
  std::vector<double> v;
  if (a > 0.0) v = TensorGrid::graded(0.0, a, h0, growth, h, true);
  if (a < phi_max) {
    const auto tail = TensorGrid::graded(a, phi_max, h0, growth, h, false);
    v.insert(v.end(), tail.begin() + (v.empty() ? 0 : 1), tail.end());
  }
  return v;
}

// Upper half of the unit disk: E = [-1, 0] on the axis, F the arc [0, theta].
class SlitDiskHalf final : public ModulusGeometry {
 public:
  explicit SlitDiskHalf(double theta) : theta_(theta) {}
  NodeClass classify(Point p) const override {
    if (std::abs(p.y) <= kTiny && p.x <= kTiny) return {NodeClass::dirichlet, 0.0};
    if (p.norm() >= 1.0 - kTiny) {
      if (std::atan2(p.y, p.x) <= theta_ + kTiny) return {NodeClass::dirichlet, 1.0};
      return {NodeClass::outside, 0.0};
    }
    return {};
  }
  Cut cut(Point a, Point b) const override {
    if (b.norm() < 1.0 - kTiny) return {};
    const auto t = circle_cross(a, b, 1.0);
    if (!t) return {};
    const Point q = a + *t * (b - a);
    if (std::atan2(q.y, q.x) <= theta_) return {Cut::dirichlet, *t, 1.0};
    return {Cut::neumann, *t, 0.0};
  }
  bool inside(Point p) const override { return p.y >= 0.0 && p.norm() < 1.0; }

 private:
  double theta_;
};

}  // namespace

double rectangle_extremal_distance(double w, double h, double grid_h) {
  RectangleGeometry geo(w);
  ModulusProblem p;
  p.grid.x = TensorGrid::uniform(0.0, w, nodes_for(w, grid_h));
  p.grid.y = TensorGrid::uniform(0.0, h, nodes_for(h, grid_h));
  p.geometry = &geo;
  return extremal_distance(p).extremal_distance;
}

double annulus_extremal_distance(double eps, double outer, const std::vector<double>& slit_angles, int n_phi) {
  if (!(eps > 0.0 && eps < outer) || n_phi < 4) throw SolverError("bad annulus parameters");
  const double dphi = kTwoPi / n_phi;
  const double r0 = std::log(eps);
  const double r1 = std::log(outer);
  LogPolarAnnulus geo(r0, r1, slit_angles);
  ModulusProblem p;
  p.grid.chart = Chart::log_polar;
  p.grid.periodic_y = true;
  p.grid.x = TensorGrid::uniform(r0, r1, nodes_for(r1 - r0, dphi));
  for (int j = 0; j < n_phi; ++j) p.grid.y.push_back((j + 0.5) * dphi);
  p.geometry = &geo;
  return extremal_distance(p).extremal_distance;
}

double annulus_extremal_distance_cartesian(double eps, double outer, const std::vector<double>& slit_angles,
                                           double grid_h) {
  CartesianAnnulus geo(eps / outer, slit_angles);
  ModulusProblem p;
  const std::size_t n = nodes_for(2.0, grid_h);
  p.grid.x = TensorGrid::uniform(-1.0, 1.0, n);
  p.grid.y = TensorGrid::uniform(-1.0, 1.0, n);
  p.geometry = &geo;
  return extremal_distance(p).extremal_distance;
}

double grotzsch_extremal_distance(double s, double grid_h) {
  GrotzschHalf geo(s);
  ModulusProblem p;
  p.grid.x = TensorGrid::uniform(-1.0, 1.0, nodes_for(2.0, grid_h));
  p.grid.y = TensorGrid::uniform(0.0, 1.0, nodes_for(1.0, grid_h));
  p.geometry = &geo;
  p.energy_scale = 2.0;
  return extremal_distance(p).extremal_distance;
}

namespace {

ExtBracket solve_strip(double rho0, double phi_max, double a, bool annulus, double grid_h) {
  const double h = 2.0 * grid_h;
  // Grading ratio shrinks with the base step so the bracket closes.
  const double growth = std::clamp(1.0 + 20.0 * grid_h, 1.03, 1.3);
  ModulusProblem p;
  p.grid.chart = Chart::log_polar;
  p.grid.x = TensorGrid::graded(rho0, 0.0, h / kH0, growth, kRhoMax, true);
  p.grid.y = angles_towards(a, phi_max, h, growth);
  ArcStrip primal(rho0, phi_max, a, annulus, false);
  ArcStrip dual(rho0, phi_max, a, annulus, true);
  // The full problem is two mirror copies of the strip.
  p.geometry = &primal;
  p.energy_scale = 2.0;
  const ModulusResult lo = extremal_distance(p);
  p.geometry = &dual;
  p.energy_scale = 0.5;
  const ModulusResult hi = extremal_distance(p);
  return {lo.extremal_distance, 1.0 / hi.extremal_distance, lo.iterations + hi.iterations};
}

}  // namespace

ExtBracket lambda_quarter_disk(double theta, double grid_h) {
  if (!(theta > 0.0 && theta < kPi)) throw SolverError("arc half-angle must lie in (0, pi)");
  // The potential decays like |w| towards the corner, so rho = -24 is far.
  return solve_strip(-24.0, 0.5 * kPi, 0.5 * theta, false, grid_h);
}

double lambda_slit_disk(double theta, double grid_h) {
  SlitDiskHalf geo(theta);
  ModulusProblem p;
  p.grid.x = TensorGrid::uniform(-1.0, 1.0, nodes_for(2.0, grid_h));
  p.grid.y = TensorGrid::uniform(0.0, 1.0, nodes_for(1.0, grid_h));
  p.geometry = &geo;
  p.energy_scale = 2.0;
  return extremal_distance(p).extremal_distance;
}

ExtBracket arc_annulus(double theta, double eps, double grid_h) {
  if (!(theta > 0.0 && theta <= kPi)) throw SolverError("arc half-angle must lie in (0, pi]");
  if (!(eps > 0.0 && eps < 1.0)) throw SolverError("eps must lie in (0, 1)");
  return solve_strip(std::log(eps), kPi, theta, true, grid_h);
}

namespace {

constexpr const char* kTableSchema = "canonical_tables/1";

std::string table_row(const CanonicalTables& t, std::size_t i) {
  char buf[256];
  std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g,%.17g,%.17g,%.17g", t.theta[i], t.lambda[i], t.delta[i], t.grid_h,
                t.eps1, t.eps2);
  return buf;
}

double delta_at(double theta, double grid_h, double eps1, double eps2) {
  if (theta >= kPi) return 0.0;
  auto reduced = [&](double eps) { return arc_annulus(theta, eps, grid_h).value() + std::log(eps) / kTwoPi; };
  const double v1 = reduced(eps1);
  const double v2 = reduced(eps2);
  // The eps dependence is quadratic.
  const double r = (eps2 * eps2) / (eps1 * eps1 - eps2 * eps2);
  return v2 + (v2 - v1) * r;
}

double interpolate(double omega, const std::vector<double>& theta, const std::vector<double>& v) {
  if (!(omega > 0.0 && omega <= 1.0)) throw std::invalid_argument("omega must lie in (0, 1]");
  if (theta.empty()) throw std::invalid_argument("canonical tables are empty");
  const double th = kPi * omega;
  // Both functions behave like (1/pi) log(1/theta) near 0.
  if (th <= theta.front()) return v.front() + std::log(theta.front() / th) / kPi;
  if (th >= theta.back()) return v.back();
  const auto it = std::upper_bound(theta.begin(), theta.end(), th);
  const std::size_t k = static_cast<std::size_t>(it - theta.begin());
  const double x0 = std::log(theta[k - 1]);
  const double x1 = std::log(theta[k]);
  const double s = (std::log(th) - x0) / (x1 - x0);
  return v[k - 1] + s * (v[k] - v[k - 1]);
}

}  // namespace

std::uint64_t CanonicalTables::checksum() const {
  std::uint64_t h = 1469598103934665603ull;
  for (std::size_t i = 0; i < theta.size(); ++i) {
    for (char c : table_row(*this, i) + "\n") {
      h ^= static_cast<unsigned char>(c);
      h *= 1099511628211ull;
    }
  }
  return h;
}

std::vector<double> default_theta_grid(int count) {
  std::vector<double> v;
  for (int j = 1; j <= count; ++j) v.push_back(kPi * j / count);
  return v;
}

CanonicalTables build_canonical_tables(const std::vector<double>& theta_grid, double grid_h, double eps1,
                                       double eps2) {
  if (!(grid_h > 0.0 && grid_h < 0.5)) throw SolverError("grid_h must lie in (0, 0.5)");
  if (!(eps1 > eps2 && eps2 > 0.0 && eps1 < 0.5)) throw SolverError("need 0.5 > eps1 > eps2 > 0");
  CanonicalTables t;
  t.grid_h = grid_h;
  t.eps1 = eps1;
  t.eps2 = eps2;
  for (double th : theta_grid) {
    if (!(th > 0.0 && th <= kPi)) throw SolverError("theta grid must lie in (0, pi]");
    if (!t.theta.empty() && th <= t.theta.back()) throw SolverError("theta grid must be increasing");
    t.theta.push_back(th);
    // At theta = pi the arc closes up and touches [-1, 0].
    t.lambda.push_back(th >= kPi ? 0.0 : lambda_quarter_disk(th, grid_h).value());
    t.delta.push_back(delta_at(th, grid_h, eps1, eps2));
  }
  char buf[256];
  for (std::size_t i = 0; i < t.theta.size(); ++i) {
    const double w = t.theta[i] / kPi;
    const double el = std::exp(-kPi * t.lambda[i]);
    const double ed = std::exp(-kPi * t.delta[i]);
    if (!(el <= w * (1 + 1e-12) && w <= 8.0 / kPi * el)) {
      std::snprintf(buf, sizeof buf, "Lambda sandwich fails at theta=%.6g", t.theta[i]);
      t.violations.emplace_back(buf);
    }
    if (!(w <= ed * (1 + 1e-12) && ed <= 0.5 * kPi * w * (1 + 1e-12))) {
      std::snprintf(buf, sizeof buf, "Delta sandwich fails at theta=%.6g", t.theta[i]);
      t.violations.emplace_back(buf);
    }
    if (i > 0 && !(t.lambda[i] < t.lambda[i - 1] && t.delta[i] < t.delta[i - 1])) {
      std::snprintf(buf, sizeof buf, "tables not decreasing at theta=%.6g", t.theta[i]);
      t.violations.emplace_back(buf);
    }
  }
  return t;
}

double lambda_star(double omega, const CanonicalTables& t) { return interpolate(omega, t.theta, t.lambda); }
double delta_star(double omega, const CanonicalTables& t) { return interpolate(omega, t.theta, t.delta); }

void write_tables_csv(const CanonicalTables& t, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  char buf[64];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(t.checksum()));
  out << "# schema: " << kTableSchema << "\n# checksum: " << buf << "\ntheta,Lambda,Delta,grid_h,eps1,eps2\n";
  for (std::size_t i = 0; i < t.theta.size(); ++i) out << table_row(t, i) << "\n";
  if (!out) throw std::runtime_error("write failed for " + path);
}

CanonicalTables read_tables_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read " + path);
  CanonicalTables t;
  std::string line, schema, stored;
  bool header = false;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    if (line.rfind("# schema: ", 0) == 0) {
      schema = line.substr(10);
      continue;
    }
    if (line.rfind("# checksum: ", 0) == 0) {
      stored = line.substr(12);
      continue;
    }
    if (line[0] == '#') continue;
    if (!header) {
      if (line != "theta,Lambda,Delta,grid_h,eps1,eps2") throw std::runtime_error(path + ": unexpected header");
      header = true;
      continue;
    }
    std::istringstream row(line);
    std::string cell;
    std::vector<double> v;
    while (std::getline(row, cell, ',')) {
      try {
        v.push_back(std::stod(cell));
      } catch (const std::exception&) {
        throw std::runtime_error(path + ": bad number '" + cell + "'");
      }
    }
    if (v.size() != 6) throw std::runtime_error(path + ": row needs 6 columns");
    t.theta.push_back(v[0]);
    t.lambda.push_back(v[1]);
    t.delta.push_back(v[2]);
    t.grid_h = v[3];
    t.eps1 = v[4];
    t.eps2 = v[5];
  }
  if (schema != kTableSchema) throw std::runtime_error(path + ": schema mismatch");
  if (t.theta.empty()) throw std::runtime_error(path + ": no rows");
  char buf[64];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(t.checksum()));
  if (stored != buf) throw std::runtime_error(path + ": checksum mismatch");
  return t;
}

}  // namespace hardy
