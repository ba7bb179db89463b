#include <doctest.h>

#include <algorithm>

#include "flipforge/corpus.hpp"
#include "flipforge/error.hpp"
#include "flipforge/flip_graph.hpp"
#include "flipforge/lift3d.hpp"

using namespace flipforge;

namespace {

std::vector<Tet> sorted(std::vector<Tet> v) {
  std::sort(v.begin(), v.end());
  return v;
}

Tetrahedralization prism6_tets() {
  auto d = gen_prism6();
  auto r = lawson_directed(d.role("farthest"), d.points, Direction::Down);
  return sequence_to_tetrahedralization(d.role("farthest"), r.sequence, d.points);
}

}  // namespace

TEST_CASE("section heights") {
  LiftedPointSet A({{0, 0}, {4, 0}, {0, 4}, {1, 1}}, {0, 4, 8, 5});
  Triangulation T(A, {{0, 1, 2}});
  CHECK(section_height(T, A, {0, 0}) == 0);
  CHECK(section_height(T, A, {2, 0}) == 2);
  CHECK(section_height(T, A, {1, 1}) == 3);
  CHECK_THROWS_AS(section_height(T, A, {5, 5}), Error);
}

TEST_CASE("section order") {
  auto d = gen_prism6();
  const auto& A = d.points;
  const auto &L = d.role("regular"), &W = d.role("whirl"), &U = d.role("farthest");
  CHECK(section_leq(L, L, A));
  CHECK(section_leq(L, W, A));
  CHECK(section_leq(W, U, A));
  CHECK_FALSE(section_leq(U, L, A));
  CHECK_FALSE(section_leq(W, L, A));

  // Convex quad under x^2 + y^2: the Delaunay section is below the other one.
  LiftedPointSet Q({{0, 0}, {2, 0}, {0, 2}, {2, 3}}, {0, 4, 4, 13});
  Triangulation del = extreme_triangulation(Q, Side::Lower);
  Triangulation other = extreme_triangulation(Q, Side::Upper);
  REQUIRE(del != other);
  CHECK(section_leq(del, other, Q));
  CHECK_FALSE(section_leq(other, del, Q));
}

TEST_CASE("sections that cross are ordered neither way") {
  // Two inner points, both lifted high: inserting them into
  // different triangles gives crossing sections.
  LiftedPointSet A({{0, 0}, {8, 0}, {8, 8}, {0, 8}, {2, 5}, {6, 3}}, {0, 0, 1, 2, 10, 10});
  Triangulation T1(A, {{0, 1, 2}, {0, 2, 4}, {0, 4, 3}, {4, 2, 3}});
  Triangulation T2(A, {{0, 1, 5}, {5, 1, 2}, {0, 5, 2}, {0, 2, 3}});
  REQUIRE(validate_triangulation(T1, A).ok());
  REQUIRE(validate_triangulation(T2, A).ok());
  CHECK_FALSE(section_leq(T1, T2, A));
  CHECK_FALSE(section_leq(T2, T1, A));
}

TEST_CASE("sequence to tetrahedralization") {
  auto d = gen_prism6();
  const auto& A = d.points;
  auto r = lawson_directed(d.role("farthest"), A, Direction::Down);
  auto X = sequence_to_tetrahedralization(d.role("farthest"), r.sequence, A);
  CHECK(X.tets.size() == r.sequence.flips.size());
  CHECK(X.lower == d.role("regular"));
  CHECK(X.upper == d.role("farthest"));
  CHECK(validate_tetrahedralization(X, A).ok());

  FlipSequence wrong = r.sequence;
  wrong.start = d.role("regular").key();
  CHECK_THROWS_AS(sequence_to_tetrahedralization(d.role("farthest"), wrong, A), Error);
  FlipSequence mixed = r.sequence;
  mixed.flips.push_back(inverse(mixed.flips.back()));
  CHECK_THROWS_AS(sequence_to_tetrahedralization(d.role("farthest"), mixed, A), Error);
}

TEST_CASE("tetrahedralization validation finds defects") {
  auto d = gen_prism6();
  const auto& A = d.points;
  auto X = prism6_tets();
  REQUIRE(validate_tetrahedralization(X, A).ok());

  auto missing = X;
  missing.tets.pop_back();
  CHECK_FALSE(validate_tetrahedralization(missing, A).ok());

  auto dup = X;
  dup.tets.push_back(dup.tets.front());
  CHECK(validate_tetrahedralization(dup, A).has(TetViolation::Kind::DuplicateTet));

  auto unknown = X;
  unknown.tets.push_back({0, 1, 2, 9});
  CHECK(validate_tetrahedralization(unknown, A).has(TetViolation::Kind::UnknownVertex));

  // Replace the tets by a different valid-looking set covering more volume.
  auto extra = X;
  extra.tets.push_back(make_tet(0, 1, 2, 4));
  auto rep = validate_tetrahedralization(extra, A);
  CHECK_FALSE(rep.ok());
  CHECK(rep.has(TetViolation::Kind::Overlap));
}

TEST_CASE("removable tets: the three cases") {
  LiftedPointSet A({{0, 0}, {6, 0}, {0, 6}, {1, 1}}, {0, 0, 0, -1});
  Triangulation top(A, {{0, 1, 2}});
  auto f = removable_flip(make_tet(0, 1, 2, 3), top, A);
  REQUIRE(f);
  CHECK(f->kind == FlipKind::Flip13);
  Triangulation low = apply_flip(top, *f, A);
  auto g = removable_flip(make_tet(0, 1, 2, 3), low, A);
  REQUIRE(g);
  CHECK(g->kind == FlipKind::Flip31);

  LiftedPointSet Q({{0, 0}, {2, 0}, {0, 2}, {2, 3}}, {0, 4, 4, 13});
  Triangulation T(Q, {{0, 1, 3}, {0, 3, 2}});
  auto h = removable_flip(make_tet(0, 1, 2, 3), T, Q);
  REQUIRE(h);
  CHECK(h->kind == FlipKind::Flip22);
  CHECK(h->direction == Direction::Down);
  // No exposed face: not removable.
  Triangulation other(Q, {{0, 1, 2}, {1, 3, 2}});
  CHECK(removable_flip(make_tet(0, 1, 2, 3), apply_flip(T, *h, Q), Q).has_value());
  CHECK(other == apply_flip(T, *h, Q));
}

TEST_CASE("tets to sequence and back") {
  auto d = gen_prism6();
  const auto& A = d.points;
  auto X = prism6_tets();
  auto r = tetrahedralization_to_sequence(X, A, Side::Lower);
  REQUIRE(r.status == TetToSeqStatus::Completed);
  CHECK(r.final == X.upper);
  CHECK(r.remaining.empty());
  auto back = sequence_to_tetrahedralization(X.lower, r.sequence, A);
  CHECK(sorted(back.tets) == sorted(X.tets));
  auto r2 = tetrahedralization_to_sequence(X, A, Side::Upper);
  REQUIRE(r2.status == TetToSeqStatus::Completed);
  CHECK(r2.final == X.lower);
}

TEST_CASE("viewing directions") {
  CHECK_THROWS_AS(Direction3(0, 0, 0), Error);
  CHECK(Direction3(1, 0, 0).str() == "1,0,0");
  Projection pz(Direction3::z_axis());
  CHECK(pz.plane({1, 2, 3}) == Point2{1, 2});
  CHECK(pz.depth({1, 2, 3}) == 3);
}

TEST_CASE("in front / behind for stacked tets") {
  // Two tets stacked along z over the same triangle.
  LiftedPointSet A({{0, 0}, {6, 0}, {0, 6}, {1, 1}, {2, 1}}, {0, 0, 0, 1, -1});
  Tet upper = make_tet(0, 1, 2, 3), lower = make_tet(0, 1, 2, 4);
  auto o = infront_behind(lower, upper, A, Direction3::z_axis());
  REQUIRE(o);
  CHECK(*o == DepthOrder::FirstBeforeSecond);
  CHECK(*infront_behind(upper, lower, A, Direction3::z_axis()) == DepthOrder::SecondBeforeFirst);
  CHECK(*infront_behind(lower, upper, A, Direction3(0, 0, -1)) == DepthOrder::SecondBeforeFirst);
}

TEST_CASE("sequence-produced tetrahedralizations are acyclic along z") {
  for (Label n = 4; n <= 6; ++n) {
    auto d = gen_convex_ngon(n);
    auto G = build_directed_flip_graph(d.points, Direction::Up);
    auto it = maximal_paths(G, d.points);
    while (auto seq = it.next()) {
      auto X = sequence_to_tetrahedralization(G.node(it.start()), *seq, d.points);
      CHECK(acyclicity_check(X, d.points, Direction3::z_axis()).acyclic);
    }
  }
}

TEST_CASE("schonhardt7 along z and x") {
  auto d = gen_schonhardt7();
  const auto& A = d.points;
  const auto& X = *d.tetrahedralization;
  CHECK(X.tets.size() == 10);
  CHECK(validate_tetrahedralization(X, A).ok());
  auto z = acyclicity_check(X, A, Direction3::z_axis());
  CHECK_FALSE(z.acyclic);
  CHECK(z.cycle.size() == 3);
  const Tet t1 = make_tet(0, 2, 6, 3), t2 = make_tet(0, 1, 6, 4), t3 = make_tet(1, 2, 6, 5);
  for (auto [a, b] : {std::pair{t1, t2}, {t2, t3}, {t3, t1}}) {
    auto o = infront_behind(a, b, A, Direction3::z_axis());
    REQUIRE(o);
    CHECK(*o == DepthOrder::FirstBeforeSecond);
  }
  CHECK(acyclicity_check(X, A, Direction3(1, 0, 0)).acyclic);
  auto stuck = tetrahedralization_to_sequence(X, A, Side::Lower);
  CHECK(stuck.status == TetToSeqStatus::Stuck);
  CHECK_FALSE(acyclicity_check(stuck.remaining, A, Direction3::z_axis()).acyclic);

  auto R = reproject_along_direction(X, A, Direction3(1, 0, 0));
  CHECK(validate_tetrahedralization(R.tets, R.points).ok());
  CHECK(R.tets.lower == R.front);
  auto done = tetrahedralization_to_sequence(R.tets, R.points, Side::Lower);
  REQUIRE(done.status == TetToSeqStatus::Completed);
  auto back = sequence_to_tetrahedralization(R.tets.lower, done.sequence, R.points);
  CHECK(sorted(back.tets) == sorted(X.tets));
}

TEST_CASE("find_acyclic_direction") {
  auto d = gen_schonhardt7();
  auto dir = find_acyclic_direction(*d.tetrahedralization, d.points, 5, 50);
  REQUIRE(dir);
  CHECK(acyclicity_check(*d.tetrahedralization, d.points, *dir).acyclic);
}
