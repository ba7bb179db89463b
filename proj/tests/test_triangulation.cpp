#include <doctest.h>

#include "flipforge/corpus.hpp"
#include "flipforge/error.hpp"
#include "flipforge/flip_graph.hpp"
#include "flipforge/triangulation.hpp"
#include "oracles.hpp"

using namespace flipforge;

namespace {

LiftedPointSet square_with_center() {
  return LiftedPointSet({{0, 0}, {4, 0}, {4, 4}, {0, 4}, {1, 2}}, {0, 1, 5, 2, -1});
}

std::set<std::array<Label, 3>> sorted_tris(const Triangulation& T) {
  std::set<std::array<Label, 3>> out;
  for (const auto& t : T.triangles()) out.insert(sorted_triple(t[0], t[1], t[2]));
  return out;
}

}  // namespace

TEST_CASE("LiftedPointSet rejects degenerate input") {
  CHECK_THROWS_AS(LiftedPointSet({{0, 0}, {0, 0}, {1, 0}}, {0, 1, 2}), Error);
  CHECK_THROWS_AS(LiftedPointSet({{0, 0}, {1, 1}, {2, 2}}, {0, 1, 2}), Error);
  CHECK_THROWS_AS(LiftedPointSet({{0, 0}, {1, 0}, {0, 1}, {1, 1}}, {0, 0, 0, 0}), Error);
  CHECK_THROWS_AS(LiftedPointSet({{0, 0}, {1, 0}}, {0, 0, 0}), Error);
  auto A = square_with_center();
  CHECK(A.size() == 5);
  CHECK(A.hull() == std::vector<Label>{0, 1, 2, 3});
  CHECK(A.hull_area2() == 32);
  CHECK_FALSE(A.is_hull_vertex(4));
  CHECK(A.is_hull_edge(0, 1));
  CHECK_FALSE(A.is_hull_edge(0, 2));
}

TEST_CASE("triangulation normalization and keys") {
  auto A = square_with_center();
  Triangulation T(A, {{4, 1, 0}, {1, 4, 2}, {2, 4, 3}, {3, 4, 0}});
  CHECK(T.key() == "0,1,4;0,3,4;1,2,4;2,3,4");
  CHECK(T.key() == canonical_key(T));
  for (const auto& t : T.triangles()) {
    CHECK(t[0] < t[1]);
    CHECK(t[0] < t[2]);
    CHECK(A.orient2d(t[0], t[1], t[2]) == Sign::Positive);
  }
  CHECK(T.edges().size() == 8);
  const EdgeStar* s = T.star(Edge(0, 4));
  REQUIRE(s);
  CHECK(A.orient2d(0, 4, s->left) == Sign::Positive);
  CHECK(s->count() == 2);
  CHECK(T.star(Edge(0, 1))->count() == 1);
  CHECK(T.star(Edge(0, 2)) == nullptr);
  CHECK(T.has_triangle(4, 2, 1));
  CHECK(T.vertices() == std::vector<Label>{0, 1, 2, 3, 4});
}

TEST_CASE("validate_triangulation catches broken inputs") {
  auto A = square_with_center();
  CHECK(validate_triangulation({{0, 1, 4}, {1, 2, 4}, {2, 3, 4}, {3, 0, 4}}, A).ok());
  CHECK(validate_triangulation({{0, 1, 2}, {0, 2, 3}}, A).ok());
  CHECK_FALSE(validate_triangulation({{0, 1, 4}, {1, 2, 4}, {2, 3, 4}}, A).ok());            // hole
  CHECK_FALSE(validate_triangulation({{0, 1, 2}, {0, 2, 3}, {0, 1, 4}}, A).ok());            // overlap
  CHECK_FALSE(validate_triangulation({{0, 1, 2}, {0, 2, 3}, {0, 2, 1}}, A).ok());            // duplicate
  CHECK_FALSE(validate_triangulation({{0, 1, 7}}, A).ok());                                  // unknown
  CHECK_FALSE(validate_triangulation({{0, 1, 2}, {1, 2, 3}, {0, 2, 3}, {0, 1, 3}}, A).ok());  // double cover
}

TEST_CASE("extreme triangulations match a brute-force hull") {
  for (std::uint64_t seed = 1; seed <= 25; ++seed) {
    auto d = gen_random(static_cast<Label>(4 + seed % 6), seed);
    const auto& A = d.points;
    CHECK(sorted_tris(extreme_triangulation(A, Side::Lower)) == oracle::brute_hull(A, true));
    CHECK(sorted_tris(extreme_triangulation(A, Side::Upper)) == oracle::brute_hull(A, false));
    CHECK(validate_triangulation(extreme_triangulation(A, Side::Lower), A).ok());
  }
}

TEST_CASE("three points") {
  LiftedPointSet A({{0, 0}, {1, 0}, {0, 1}}, {0, 0, 0});
  CHECK(extreme_triangulation(A, Side::Lower).key() == "0,1,2");
  CHECK(extreme_triangulation(A, Side::Upper).key() == "0,1,2");
}

TEST_CASE("edge classes agree with the plane oracle") {
  for (std::uint64_t seed = 1; seed <= 8; ++seed) {
    auto d = gen_random(6, seed);
    const auto& A = d.points;
    for (const Triangulation& T : enumerate_triangulations(A)) {
      for (Edge e : T.edges()) {
        if (T.star(e)->count() < 2) {
          CHECK(classify_edge(T, e, A, Direction::Up) == EdgeClass::Hull);
          continue;
        }
        for (Direction dir : {Direction::Up, Direction::Down}) {
          bool lnr = classify_edge(T, e, A, dir) == EdgeClass::LocallyNonRegular;
          CHECK(lnr == oracle::locally_non_regular(T, e, A, dir == Direction::Up));
        }
        bool fl = classify_flippability(T, e, A).kind != Flippability::Kind::Unflippable;
        CHECK(fl == oracle::flippable(T, e, A));
      }
    }
  }
}

TEST_CASE("regular triangulations are locally regular everywhere") {
  auto A = square_with_center();
  Triangulation L = extreme_triangulation(A, Side::Lower);
  for (Edge e : L.edges()) CHECK(classify_edge(L, e, A, Direction::Down) != EdgeClass::LocallyNonRegular);
  Triangulation U = extreme_triangulation(A, Side::Upper);
  for (Edge e : U.edges()) CHECK(classify_edge(U, e, A, Direction::Up) != EdgeClass::LocallyNonRegular);
}

TEST_CASE("classify_edge rejects missing edges") {
  auto A = square_with_center();
  Triangulation T(A, {{0, 1, 2}, {0, 2, 3}});
  CHECK_THROWS_AS(classify_edge(T, Edge(1, 3), A, Direction::Up), Error);
}

TEST_CASE("vertex classes") {
  auto d = gen_prism6();
  auto cls = classify_vertices(d.points);
  for (Label v : {0, 1, 2}) CHECK(cls[v] == VertexClass::HullVertex);
  // Inner points sit low: they appear on the lower envelope only.
  for (Label v : {3, 4, 5}) CHECK(cls[v] == VertexClass::LowerInterior);
  LiftedPointSet B({{0, 0}, {4, 0}, {0, 4}, {1, 1}}, {0, 0, 0, 5});
  CHECK(classify_vertices(B)[3] == VertexClass::UpperInterior);
}

TEST_CASE("locate") {
  auto A = square_with_center();
  Triangulation T(A, {{0, 1, 2}, {0, 2, 3}});
  auto i = locate(T, A, {3, 1});
  REQUIRE(i);
  CHECK(T.triangles()[*i] == Triangle{0, 1, 2});
  CHECK_FALSE(locate(T, A, {5, 5}));
}
