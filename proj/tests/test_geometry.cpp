#include <random>

#include "doctest.h"
#include "hardy/geometry.hpp"

using namespace hardy;

namespace {

Domain unit_disk() { return Domain::disk({0, 0}, 1.0, {0, 0}); }
Domain slit_one() { return Domain::slit_plane({Ray{{1, 0}, {1, 0}}}, {0, 0}); }
Domain comb4pi(Point w0 = {0.5, 0.1}) { return Domain::comb(4 * kPi, 1, std::numeric_limits<double>::infinity(), w0); }

}  // namespace

TEST_CASE("distance to boundary") {
  CHECK(unit_disk().distance_to_boundary({0, 0}) == doctest::Approx(1.0));
  CHECK(slit_one().distance_to_boundary({0, 0}) == doctest::Approx(1.0));
  CHECK(comb4pi().distance_to_boundary({0, 0}) == doctest::Approx(1.0));
  CHECK(comb4pi().distance_to_boundary({3, 1}) == doctest::Approx(1.0));
  CHECK(slit_one().distance_to_boundary({5, 0}) == doctest::Approx(0.0));
  const Domain sq = Domain::polygon({{0, 0}, {1, 0}, {1, 1}, {0, 1}}, {0.5, 0.5});
  CHECK(sq.distance_to_boundary({0.5, 0.2}) == doctest::Approx(0.2));
  CHECK(sq.distance_to_boundary({2, 0.5}) == doctest::Approx(1.0));
}

TEST_CASE("containment") {
  const Domain w = Domain::wedge(kPi / 2, 0.0, {1, 0});
  CHECK(w.contains({1, 0}));
  CHECK_FALSE(w.contains({0, 1}));
  CHECK_FALSE(w.contains({0, 0}));
  CHECK_FALSE(comb4pi().contains({2, 0}));
  CHECK(comb4pi().contains({2, 1}));
  CHECK(unit_disk().contains({0.3, 0.3}));
  CHECK_FALSE(unit_disk().contains({1, 0}));
  const Domain uhp = Domain::wedge(kPi, kPi / 2, {0, 1});
  CHECK(uhp.contains({-3, 0.1}));
  CHECK_FALSE(uhp.contains({3, -0.1}));
}

TEST_CASE("base point must be interior") {
  CHECK_THROWS_AS(Domain::comb(4 * kPi, 1, std::numeric_limits<double>::infinity(), {1, 0}), DomainError);
  CHECK_THROWS_AS(Domain::wedge(kPi / 2, 0.0, {0, 1}), DomainError);
  CHECK_THROWS_AS(unit_disk().with_base_point({2, 0}), DomainError);
  CHECK_THROWS_AS(Domain::polygon({{0, 0}, {1, 1}, {1, 0}, {0, 1}}, {0.5, 0.25}), DomainError);
}

TEST_CASE("comb ray counts") {
  CHECK(Domain::comb(2, 1, std::numeric_limits<double>::infinity(), {0.5, 0.1}).pieces().size() == 8);
  CHECK(Domain::comb(2, 3, std::numeric_limits<double>::infinity(), {0.5, 0.1}).pieces().size() == 4 + 4 + 8 + 16);
  // Level 3 starts at e^6 and is dropped by a smaller cap.
  CHECK(Domain::comb(2, 3, 100.0, {0.5, 0.1}).pieces().size() == 4 + 4 + 8);
  CHECK(comb4pi().starlike_about_origin());
  CHECK(unit_disk().starlike_about_origin());
  CHECK_FALSE(Domain::disk({3, 0}, 1.0, {3, 0}).starlike_about_origin());
}

TEST_CASE("circle intersection") {
  for (double r : {0.3, 1.0, 50.0}) {
    const auto arcs = Domain::wedge(1.1, 0.4, {1, 0.2}).circle_intersection(r);
    REQUIRE(arcs.size() == 1);
    CHECK(arcs[0].angles.width == doctest::Approx(1.1));
    CHECK_FALSE(arcs[0].closed);
  }
  CHECK(unit_disk().circle_intersection(2.0).empty());
  const auto full = unit_disk().circle_intersection(0.5);
  REQUIRE(full.size() == 1);
  CHECK(full[0].closed);

  for (double r : {1.5, 100.0, std::exp(4 * kPi) * 0.99}) {
    const auto arcs = comb4pi().circle_intersection(r);
    REQUIRE(arcs.size() == 4);
    for (const auto& a : arcs) CHECK(a.angles.width == doctest::Approx(kPi / 2));
  }
  CHECK(comb4pi().circle_intersection(std::exp(4 * kPi) * 1.01).size() == 8);

  const auto slit = slit_one().circle_intersection(2.0);
  REQUIRE(slit.size() == 1);
  CHECK(slit[0].angles.width == doctest::Approx(kTwoPi));
  CHECK_FALSE(slit[0].closed);
}

TEST_CASE("circle intersection arcs are disjoint and end on the boundary") {
  const Domain poly = Domain::polygon({{-1, -1}, {2, -1}, {2, 0.5}, {0.2, 0.5}, {0.2, 1.5}, {-1, 1.5}}, {0, 0});
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(0.1, 3.0);
  for (int trial = 0; trial < 50; ++trial) {
    const double r = u(rng);
    const auto arcs = poly.circle_intersection(r);
    double total = 0.0;
    for (std::size_t i = 0; i < arcs.size(); ++i) {
      const auto& a = arcs[i];
      total += a.angles.width;
      CHECK(poly.contains(Point::polar(r, a.angles.mid())));
      if (!a.closed) {
        CHECK(poly.distance_to_boundary(Point::polar(r, a.angles.start)) < 1e-7 * (1 + r));
        CHECK(poly.distance_to_boundary(Point::polar(r, a.angles.end())) < 1e-7 * (1 + r));
      }
      if (i + 1 < arcs.size()) CHECK(a.angles.start + a.angles.width <= arcs[i + 1].angles.start + 1e-12);
    }
    CHECK(total <= kTwoPi + 1e-12);
  }
}

TEST_CASE("piece separation") {
  CHECK(comb4pi().min_piece_separation(10.0) == doctest::Approx(std::sqrt(2.0)));
  CHECK(slit_one().min_piece_separation(10.0) == std::numeric_limits<double>::infinity());
}
