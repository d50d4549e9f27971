#include <cmath>

#include "doctest.h"
#include "hardy/canonical.hpp"
#include "hardy/modulus.hpp"
#include "oracles.hpp"

using namespace hardy;

TEST_CASE("rectangle is exact") {
  CHECK(rectangle_extremal_distance(2.0, 1.0, 1.0 / 32) == doctest::Approx(2.0).epsilon(1e-9));
  CHECK(rectangle_extremal_distance(1.0, 3.0, 1.0 / 16) == doctest::Approx(1.0 / 3.0).epsilon(1e-9));
}

TEST_CASE("annulus in log-polar coordinates") {
  const double exact = std::log(100.0) / kTwoPi;
  CHECK(annulus_extremal_distance(1e-2, 1.0, {}, 256) == doctest::Approx(exact).epsilon(1e-9));
  // Scaling the annulus changes nothing.
  CHECK(annulus_extremal_distance(0.5, 50.0, {}, 128) == doctest::Approx(exact).epsilon(1e-9));
  // Radial slits lie along the field lines.
  const double dphi = kTwoPi / 256;
  CHECK(annulus_extremal_distance(1e-2, 1.0, {0.0, 100 * dphi}, 256) == doctest::Approx(exact).epsilon(1e-9));
}

TEST_CASE("annulus on a Cartesian grid converges") {
  const double exact = std::log(10.0) / kTwoPi;
  const double e1 = std::abs(annulus_extremal_distance_cartesian(0.1, 1.0, {}, 1.0 / 64) - exact);
  const double e2 = std::abs(annulus_extremal_distance_cartesian(0.1, 1.0, {}, 1.0 / 128) - exact);
  CHECK(e2 < e1);
  CHECK(e2 < 0.005 * exact);
}

TEST_CASE("Grotzsch ring") {
  for (double s : {0.25, 0.5}) {
    CHECK(grotzsch_extremal_distance(s, 1.0 / 128) == doctest::Approx(oracle::grotzsch(s)).epsilon(0.02));
  }
}

TEST_CASE("direct and iterative solvers agree") {
  struct Half final : ModulusGeometry {
    NodeClass classify(Point p) const override {
      if (p.x <= 1e-12) return {NodeClass::dirichlet, 0.0};
      if (p.x >= 1.0 - 1e-12 && p.y < 0.5) return {NodeClass::dirichlet, 1.0};
      return {};
    }
    Cut cut(Point, Point) const override { return {}; }
    bool inside(Point) const override { return true; }
  } geo;
  ModulusProblem p;
  p.grid.x = TensorGrid::uniform(0.0, 1.0, 65);
  p.grid.y = TensorGrid::graded(0.0, 1.0, 1e-3, 1.2, 1.0 / 32, false);
  p.geometry = &geo;
  SolveOptions direct;
  direct.method = SolveMethod::direct;
  SolveOptions pcg;
  pcg.method = SolveMethod::pcg;
  const auto a = extremal_distance(p, direct);
  const auto b = extremal_distance(p, pcg);
  CHECK(b.iterations > 0);
  CHECK(a.extremal_distance == doctest::Approx(b.extremal_distance).epsilon(1e-8));
  // Warm start from the answer converges at once.
  pcg.warm_start = &a.u;
  CHECK(extremal_distance(p, pcg).iterations < b.iterations / 4);
}

TEST_CASE("ill-posed problems are rejected") {
  struct OneSided final : ModulusGeometry {
    NodeClass classify(Point p) const override {
      if (p.x <= 1e-12) return {NodeClass::dirichlet, 0.0};
      return {};
    }
    Cut cut(Point, Point) const override { return {}; }
    bool inside(Point) const override { return true; }
  } one;
  // A wall of removed nodes separates E from F.
  struct Wall final : ModulusGeometry {
    NodeClass classify(Point p) const override {
      if (p.x <= 1e-12) return {NodeClass::dirichlet, 0.0};
      if (p.x >= 1.0 - 1e-12) return {NodeClass::dirichlet, 1.0};
      if (std::abs(p.x - 0.5) < 0.1) return {NodeClass::outside, 0.0};
      return {};
    }
    Cut cut(Point, Point) const override { return {}; }
    bool inside(Point) const override { return true; }
  } wall;
  // A free pocket inside removed nodes sees no boundary data.
  struct Pocket final : ModulusGeometry {
    NodeClass classify(Point p) const override {
      if (p.x <= 1e-12) return {NodeClass::dirichlet, 0.0};
      if (p.x >= 1.0 - 1e-12) return {NodeClass::dirichlet, 1.0};
      const double d = std::max(std::abs(p.x - 0.5), std::abs(p.y - 0.5));
      if (d > 0.03 && d < 0.2) return {NodeClass::outside, 0.0};
      return {};
    }
    Cut cut(Point, Point) const override { return {}; }
    bool inside(Point) const override { return true; }
  } pocket;
  ModulusProblem p;
  p.grid.x = TensorGrid::uniform(0.0, 1.0, 21);
  p.grid.y = TensorGrid::uniform(0.0, 1.0, 21);
  p.geometry = &one;
  CHECK_THROWS_AS(extremal_distance(p), SolverError);
  p.geometry = &wall;
  CHECK_THROWS_AS(extremal_distance(p), SolverError);
  p.geometry = &pocket;
  CHECK_THROWS_AS(extremal_distance(p), SolverError);
}
