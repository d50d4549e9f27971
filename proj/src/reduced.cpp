#include "hardy/reduced.hpp"

#include <algorithm>
#include <cmath>

#include "hardy/modulus.hpp"

namespace hardy {

namespace {

constexpr double kTiny = 1e-12;

// D_r minus the eps-disk about w0, in chart coordinates z = w0 + exp(rho + i phi).
// The eps-circle is at 0 and the circle |z| = r at 1; the other boundary
// pieces are Neumann in the first problem and at 1 in the second.
class LevelSetGeometry final : public ModulusGeometry {
 public:
  LevelSetGeometry(const Domain& d, double r, double rho0, bool whole_boundary)
      : d_(d), w0_(d.base_point()), r_(r), rho0_(rho0), whole_(whole_boundary) {}

  NodeClass classify(Point p) const override {
    if (p.x <= rho0_ + kTiny) return {NodeClass::dirichlet, 0.0};
    const Point z = phys(p);
    if (z.norm() >= r_ || !d_.contains(z)) return {NodeClass::outside, 0.0};
    return {};
  }

  Cut cut(Point a, Point b) const override {
    const Point za = phys(a);
    const Point zb = phys(b);
    Cut best;
    best.t = 2.0;
    if (zb.norm() >= r_) {
      // Entering from inside, so the larger root.
      const Point dz = zb - za;
      const double A = dz.norm2();
      const double B = 2.0 * dot(za, dz);
      const double C = za.norm2() - r_ * r_;
      const double t = (-B + std::sqrt(std::max(B * B - 4.0 * A * C, 0.0))) / (2.0 * A);
      best = {Cut::dirichlet, std::clamp(t, 0.0, 1.0), 1.0};
    }
    const double len = (zb - za).norm();
    if (d_.distance_to_boundary(za) <= len) {
      for (const auto& piece : d_.pieces()) {
        const auto t = segment_hit(piece, za, zb);
        if (t && *t < best.t) best = whole_ ? Cut{Cut::dirichlet, *t, 1.0} : Cut{Cut::neumann, *t, 0.0};
      }
    }
    if (best.t > 1.0) return {};
    return best;
  }

  bool inside(Point p) const override {
    if (p.x < rho0_) return false;
    const Point z = phys(p);
    return z.norm() < r_ && d_.contains(z);
  }

 private:
  Point phys(Point p) const { return w0_ + Point::polar(std::exp(p.x), p.y); }

  const Domain& d_;
  Point w0_;
  double r_;
  double rho0_;
  bool whole_;
};

// Angular count so that comb rays fall on cell faces.
int angular_nodes(const Domain& d, double grid_h) {
  int align = 8;
  if (d.kind() == DomainKind::comb && d.base_point().norm() == 0.0) {
    int levels = 0;
    for (int l = 1; l <= d.comb_params().levels; ++l) {
      if (std::exp(d.comb_params().c * l) < d.comb_params().r_max) levels = l;
    }
    align = std::max(align, 1 << (levels + 2));
  }
  const int raw = static_cast<int>(std::ceil(kTwoPi / (2.0 * grid_h)));
  return (raw + align - 1) / align * align;
}

}  // namespace

ReducedResult reduced_extremal_distance_full(const Domain& d, double r, const ReducedOptions& opt) {
  if (!(opt.eps1 > opt.eps2 && opt.eps2 > 0.0)) throw DomainError("need eps1 > eps2 > 0");
  if (!(opt.grid_h > 0.0 && opt.grid_h < 0.5)) throw DomainError("grid_h must lie in (0, 0.5)");
  const Point w0 = d.base_point();
  if (!(w0.norm() < r)) throw DomainError("base point must lie inside |z| < r");
  if (!(d.distance_to_boundary(w0) > opt.eps1)) throw DomainError("base point is within eps of the boundary");
  if (!(r - w0.norm() > opt.eps1)) throw DomainError("base point is within eps of the circle |z| = r");

  ReducedResult res;
  res.n_phi = angular_nodes(d, opt.grid_h);
  const double dphi = kTwoPi / res.n_phi;
  const double rho_top = std::log(r + w0.norm()) + dphi;

  auto reduced_at = [&](double eps) {
    const double rho0 = std::log(eps);
    ModulusProblem p;
    p.grid.chart = Chart::log_polar;
    p.grid.periodic_y = true;
    const auto n_rho = static_cast<std::size_t>(std::ceil((rho_top - rho0) / dphi)) + 1;
    p.grid.x = TensorGrid::uniform(rho0, rho0 + (n_rho - 1) * dphi, n_rho);
    for (int j = 0; j < res.n_phi; ++j) p.grid.y.push_back((j + 0.5) * dphi);
    res.unknowns = std::max(res.unknowns, n_rho * static_cast<std::size_t>(res.n_phi));
    LevelSetGeometry level(d, r, rho0, false);
    LevelSetGeometry whole(d, r, rho0, true);
    p.geometry = &level;
    const double to_level = extremal_distance(p).extremal_distance;
    p.geometry = &whole;
    const double to_boundary = extremal_distance(p).extremal_distance;
    return to_level - to_boundary;
  };

  res.delta_eps1 = reduced_at(opt.eps1);
  res.delta_eps2 = reduced_at(opt.eps2);
  // First order in eps.
  res.delta = res.delta_eps2 + (res.delta_eps2 - res.delta_eps1) * opt.eps2 / (opt.eps1 - opt.eps2);
  const double scale = std::max(std::abs(res.delta_eps2), 1e-3);
  res.eps_warning = std::abs(res.delta_eps1 - res.delta_eps2) > 0.05 * scale;
  return res;
}

}  // namespace hardy
