#include <doctest.h>

#include "flipforge/corpus.hpp"
#include "flipforge/error.hpp"

using namespace flipforge;

TEST_CASE("named datasets satisfy their facts") {
  for (const char* name : {"prism6", "schonhardt7", "ngon", "random", "random-convex", "random-concave"}) {
    auto d = generate(name, 6, 3);
    CAPTURE(name);
    CHECK_FALSE(d.name.empty());
    for (const auto& f : d.facts) {
      CAPTURE(f.name);
      CHECK(f.check(d));
    }
  }
  CHECK_THROWS_AS(generate("nope"), Error);
}

TEST_CASE("prism6 layout") {
  auto d = gen_prism6();
  CHECK(d.points.size() == 6);
  CHECK(d.points.point(0) == Point2{0, 0});
  CHECK(d.points.point(1) == Point2{14, 0});
  CHECK(d.points.point(2) == Point2{7, 12});
  CHECK(d.points.point(3) == Point2{parse_rat("801/202"), parse_rat("136/101")});
  for (Label v : {0, 1, 2}) CHECK(d.points.height(v) == 2);
  for (Label v : {3, 4, 5}) CHECK(d.points.height(v) == 1);
  CHECK(d.role("farthest").key() == "0,1,2");
  CHECK(d.role("whirl").key() == "0,1,4;0,2,3;0,3,4;1,2,5;1,4,5;2,3,5;3,4,5");
  CHECK(d.role("source") == d.role("farthest"));
  CHECK(d.role("target") == d.role("regular"));
}

TEST_CASE("random sets are reproducible") {
  auto a = gen_random(7, 42), b = gen_random(7, 42), c = gen_random(7, 43);
  CHECK(a.points == b.points);
  CHECK_FALSE(a.points == c.points);
  for (Label v = 0; v < a.points.size(); ++v) {
    const auto& p = a.points.point(v);
    CHECK(abs(p.x) <= 10);
    CHECK(abs(p.y) <= 10);
    CHECK(p.x.get_den() <= 4);
  }
}

TEST_CASE("convex and concave heights") {
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    auto cv = classify_vertices(gen_random(7, seed, HeightMode::Convex).points);
    auto cc = classify_vertices(gen_random(7, seed, HeightMode::Concave).points);
    for (auto c : cv) CHECK((c == VertexClass::HullVertex || c == VertexClass::LowerInterior));
    for (auto c : cc) CHECK((c == VertexClass::HullVertex || c == VertexClass::UpperInterior));
  }
}

TEST_CASE("ngon") {
  auto d = gen_convex_ngon(5);
  CHECK(d.points.size() == 5);
  CHECK(d.points.hull().size() == 5);
  CHECK(d.points.point(3) == Point2{3, 9});
  CHECK(d.points.height(3) == 90);
}
