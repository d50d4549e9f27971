#include <cmath>
#include <filesystem>
#include <fstream>

#include "doctest.h"
#include "hardy/profile.hpp"
#include "oracles.hpp"

using namespace hardy;

namespace {

const CanonicalTables& coarse_tables() {
  static const CanonicalTables t = build_canonical_tables(default_theta_grid(16), 1.0 / 64);
  return t;
}

ProfileConfig quick_config(long samples) {
  ProfileConfig cfg;
  cfg.wos.n_samples = samples;
  cfg.wos.rng_seed = 7;
  return cfg;
}

}  // namespace

TEST_CASE("r grid is geometric and avoids piece start radii") {
  const auto d = Domain::comb(2.0, 2, 1e6, {0, 0});
  const auto g = geometric_r_grid(d, 1.0, std::exp(1.0), 6);
  REQUIRE(g.size() == 6);
  CHECK(g[1] == doctest::Approx(std::exp(1.0)));
  CHECK(g[0] == doctest::Approx(1.02));
  CHECK(g[2] == doctest::Approx(1.02 * std::exp(2.0)));
  CHECK(g[4] == doctest::Approx(1.02 * std::exp(4.0)));
  CHECK_THROWS_AS(geometric_r_grid(d, 1.0, 1.0, 3), DomainError);
}

TEST_CASE("wedge profile matches the conformal map and decreases") {
  const auto d = Domain::wedge(kPi / 2, 0.0, {1.0, 0.0});
  const auto p = profile(d, {10.0, 100.0, 1000.0}, coarse_tables(), quick_config(20000));
  REQUIRE(p.rows.size() == 3);
  for (const auto& row : p.rows) {
    REQUIRE(row.valid);
    CHECK(row.n_crosscuts == 1);
    CHECK(std::abs(row.omega_star.mean - row.omega_full.mean) <= 3 * row.omega_full.std_err);
    const double exact = oracle::sector_arc_measure(kPi / 2, 0.0, row.r, {1.0, 0.0});
    CHECK(std::abs(row.omega_star.mean - exact) <= 5 * row.omega_star.std_err + 0.02 * exact);
    CHECK(std::exp(-kPi * row.lambda_star) <= row.omega_star.mean * 1.01);
    CHECK(std::exp(-kPi * row.delta_star) >= row.omega_star.mean * 0.99);
    CHECK(std::isfinite(row.k.k));
  }
  CHECK(p.rows[1].omega_star.mean < p.rows[0].omega_star.mean);
  CHECK(p.rows[2].omega_star.mean < p.rows[1].omega_star.mean);
  CHECK(p.rows[2].k.k > p.rows[1].k.k);
  CHECK(validate_profile(p).empty());
}

TEST_CASE("bounded domain profile ends in empty level sets") {
  const auto d = Domain::disk({0, 0}, 5.0, {0, 0});
  const auto p = profile(d, {2.0, 4.0, 8.0, 16.0}, coarse_tables(), quick_config(4000));
  REQUIRE(p.rows.size() == 4);
  CHECK(p.rows[0].valid);
  CHECK(p.rows[0].omega_star.mean == doctest::Approx(1.0));
  CHECK(p.rows[0].lambda_star == doctest::Approx(0.0).epsilon(1e-9));
  for (int i : {2, 3}) {
    CHECK(p.rows[i].empty);
    CHECK(p.rows[i].omega_star.mean == 0.0);
    CHECK(std::isinf(p.rows[i].lambda_star));
  }
  CHECK(validate_profile(p).empty());
}

TEST_CASE("comb crosscut count doubles past the first level") {
  const auto d = Domain::comb(2.0, 2, 1e4, {0, 0});
  auto cfg = quick_config(4000);
  const auto p = profile(d, {5.0, 10.0}, coarse_tables(), cfg);
  CHECK(p.rows[0].n_crosscuts == 4);
  CHECK(p.rows[1].n_crosscuts == 8);
  for (const auto& row : p.rows) {
    CHECK(row.valid);
    CHECK(row.omega_star.mean <= row.omega_full.mean);
  }
}

TEST_CASE("validation catches broken invariants") {
  LevelSetProfile p;
  RadiusRecord a;
  a.r = 2;
  a.valid = true;
  a.omega_star = {0.5, 0.001, 1000, 0};
  a.omega_full = {0.3, 0.001, 1000, 0};
  a.lambda_star = 10.0;
  a.delta_star = 0.01;
  a.bounded_far_sides = 2;
  RadiusRecord b = a;
  b.r = 4;
  b.omega_star = {0.9, 0.001, 1000, 0};
  b.omega_full = {0.95, 0.001, 1000, 0};
  p.rows = {a, b};
  const auto v = validate_profile(p);
  auto has = [&](const std::string& check) {
    for (const auto& x : v) {
      if (x.check == check) return true;
    }
    return false;
  };
  CHECK(has("omega_star <= omega_full"));
  CHECK(has("at most one bounded far side"));
  CHECK(has("omega_star non-increasing"));
  CHECK(has("pi/8 omega_star <= exp(-pi lambda_star)"));
  CHECK(has("exp(-pi delta_star) <= pi/2 omega_star"));
}

TEST_CASE("profile files round-trip") {
  const auto d = Domain::disk({0, 0}, 5.0, {0, 0});
  auto p = profile(d, {2.0, 8.0}, coarse_tables(), quick_config(1000));
  p.rows[0].flags.push_back("note");
  RadiusRecord bad;
  bad.r = 9;
  bad.error = "failed, badly";
  p.rows.push_back(bad);
  const auto path = (std::filesystem::temp_directory_path() / "hardy_profile_rt.csv").string();
  write_profile_csv(p, path);
  const auto q = read_profile_csv(path);
  REQUIRE(q.rows.size() == 3);
  CHECK(q.seed == p.seed);
  CHECK(q.domain_kind == "disk");
  CHECK(q.rows[0].omega_star.mean == p.rows[0].omega_star.mean);
  CHECK(q.rows[0].flags.back() == "note");
  CHECK(q.rows[1].empty);
  CHECK(std::isinf(q.rows[1].lambda_star));
  CHECK_FALSE(q.rows[2].valid);
  {
    std::ofstream out(path);
    out << "# schema: other/1\nr,omega_star_mean\n";
  }
  CHECK_THROWS(read_profile_csv(path));
  std::filesystem::remove(path);
}
