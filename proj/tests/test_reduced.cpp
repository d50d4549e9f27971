#include <cmath>
#include <complex>

#include "doctest.h"
#include "hardy/modulus.hpp"
#include "hardy/reduced.hpp"
#include "oracles.hpp"

using namespace hardy;

TEST_CASE("whole circle as the level set gives zero") {
  const Domain disk = Domain::disk({0, 0}, 1.0, {0.1, 0.0});
  CHECK(std::abs(reduced_extremal_distance_full(disk, 0.5).delta) < 0.02);
}

TEST_CASE("sector matches the single-arc formula") {
  const Domain w = Domain::wedge(kPi / 2, 0.0, {1.0, 0.2});
  for (double r : {3.0, 30.0}) {
    const double om = oracle::sector_arc_measure(kPi / 2, 0.0, r, {1.0, 0.2});
    const double exact = oracle::delta(kPi * om);
    const auto res = reduced_extremal_distance_full(w, r);
    CHECK(res.delta == doctest::Approx(exact).epsilon(0.02));
    CHECK_FALSE(res.eps_warning);
  }
}

TEST_CASE("refinement approaches the sector value") {
  const Domain w = Domain::wedge(kPi / 3, 1.0, Point::polar(2.0, 1.1));
  const Point w0 = Point::polar(2.0, 1.1);
  const double om = oracle::sector_arc_measure(kPi / 3, 1.0, 5.0, {w0.x, w0.y});
  const double exact = oracle::delta(kPi * om);
  ReducedOptions coarse;
  coarse.grid_h = 1.0 / 32;
  ReducedOptions fine;
  fine.grid_h = 1.0 / 64;
  const double e1 = std::abs(reduced_extremal_distance_full(w, 5.0, coarse).delta - exact);
  const double e2 = std::abs(reduced_extremal_distance_full(w, 5.0, fine).delta - exact);
  CHECK(e2 < e1);
}

TEST_CASE("comb stays below the disk bound") {
  const Domain comb = Domain::comb(2.0, 3, std::numeric_limits<double>::infinity(), {0, 0});
  for (double r : {10.0, 100.0}) {
    const auto res = reduced_extremal_distance_full(comb, r);
    CHECK(res.delta > 0.0);
    CHECK(res.delta <= std::log(r) / kTwoPi + 0.05);
    CHECK(res.n_phi % 32 == 0);
  }
}

TEST_CASE("argument errors") {
  const Domain w = Domain::wedge(kPi / 2, 0.0, {1.0, 0.0});
  CHECK_THROWS_AS(reduced_extremal_distance_full(w, 0.5), DomainError);
  const Domain near = Domain::wedge(kPi / 2, 0.0, {1.0, 0.9995});
  CHECK_THROWS_AS(reduced_extremal_distance_full(near, 3.0), DomainError);
  // The level set misses the component of the base point.
  const Domain disk = Domain::disk({0, 0}, 1.0, {0, 0});
  CHECK_THROWS_AS(reduced_extremal_distance_full(disk, 2.0), SolverError);
}
