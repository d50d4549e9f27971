#include <cmath>

#include "doctest.h"
#include "hardy/domain_spec.hpp"

using namespace hardy;

TEST_CASE("every kind parses") {
  const auto w = parse_domain_spec(R"({"kind": "wedge", "opening": 1.5707963267948966, "axis": 0.5})");
  CHECK(w.kind() == DomainKind::wedge);
  CHECK(w.base_point().x == doctest::Approx(std::cos(0.5)));
  const auto s = parse_domain_spec(
      R"({"kind": "slit-plane", "rays": [{"origin": [1, 0], "dir": [2, 0]}], "base_point": [0, 0]})");
  CHECK(s.kind() == DomainKind::slit_plane);
  CHECK(s.contains({0.5, 0.0}));
  CHECK_FALSE(s.contains({3.0, 0.0}));
  const auto p = parse_domain_spec(
      R"({"kind": "polygon", "vertices": [[-1, -1], [1, -1], [1, 1], [-1, 1]], "base_point": [0, 0]})");
  CHECK(p.bounded());
  const auto d = parse_domain_spec(R"({"kind": "disk", "center": [1, 2], "radius": 5})");
  CHECK(d.base_point() == Point{1, 2});
  const auto c = parse_domain_spec(R"({"kind": "comb", "c": 2.0, "levels": 3, "R_max": 10000})");
  CHECK(c.pieces().size() == 32);
  CHECK(c.base_point() == Point{0, 0});
}

TEST_CASE("bad specs are rejected with a message") {
  CHECK_THROWS_AS(parse_domain_spec("{not json"), SpecError);
  CHECK_THROWS_AS(parse_domain_spec(R"([1, 2])"), SpecError);
  CHECK_THROWS_AS(parse_domain_spec(R"({"kind": "ellipse"})"), SpecError);
  CHECK_THROWS_AS(parse_domain_spec(R"({"kind": "wedge"})"), SpecError);
  CHECK_THROWS_AS(parse_domain_spec(R"({"kind": "wedge", "opening": "wide"})"), SpecError);
  CHECK_THROWS_AS(parse_domain_spec(R"({"kind": "wedge", "opening": 7.0})"), SpecError);
  CHECK_THROWS_AS(parse_domain_spec(R"({"kind": "disk", "center": [0], "radius": 1})"), SpecError);
  CHECK_THROWS_AS(parse_domain_spec(R"({"kind": "disk", "center": [0, 0], "radius": 1, "base_point": [3, 0]})"),
                  SpecError);
  CHECK_THROWS_AS(parse_domain_spec(R"({"kind": "comb", "c": 2.0, "levels": 0})"), SpecError);
  CHECK_THROWS_AS(parse_domain_spec(R"({"kind": "comb", "c": 2.0, "levels": 1.5})"), SpecError);
  CHECK_THROWS_AS(parse_domain_spec(R"({"kind": "slit-plane", "rays": [], "base_point": [0, 0]})"), SpecError);
  CHECK_THROWS_AS(load_domain_spec("/nonexistent/spec.json"), SpecError);
}
