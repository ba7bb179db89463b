// One PASS/FAIL line per acceptance criterion; exit status 1 if any fails.

#include <algorithm>
#include <chrono>
#include <functional>
#include <optional>
#include <iostream>
#include <random>
#include <set>
#include <sstream>
#include <string>

#include "flipforge/corpus.hpp"
#include "flipforge/error.hpp"
#include "flipforge/flip_graph.hpp"
#include "flipforge/flips.hpp"
#include "flipforge/kernel.hpp"
#include "flipforge/lift3d.hpp"
#include "flipforge/polyhedron.hpp"
#include "oracles.hpp"

using namespace flipforge;

namespace {

struct Outcome {
  bool pass = true;
  std::ostringstream detail;
  std::vector<std::string> problems;

  void expect(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      if (problems.size() < 5) problems.push_back(what);
    }
  }
};

std::vector<Tet> sorted(std::vector<Tet> v) {
  std::sort(v.begin(), v.end());
  return v;
}

std::size_t choose2(std::size_t n) { return n * (n - 1) / 2; }

void prism6_poset(Outcome& o) {
  auto d = gen_prism6();
  const auto& A = d.points;
  auto G = build_directed_flip_graph(A, Direction::Up);
  o.expect(G.sources().size() == 1, "source count");
  o.expect(G.sinks().size() == 2, "sink count");
  auto w = G.find(d.role("whirl").key()), f = G.find(d.role("farthest").key());
  o.expect(w && f && !G.has_path(*w, *f), "path whirl -> farthest exists");
  std::set<std::size_t> lengths;
  auto it = maximal_paths(G, A);
  while (auto seq = it.next()) lengths.insert(seq->flips.size());
  for (auto l : lengths) o.expect(l == 4 || l == 5, "path of length " + std::to_string(l));
  auto classes = distinct_tetrahedralizations(G, A);
  o.expect(classes.size() == 6, "tetrahedralization count " + std::to_string(classes.size()));
  for (const auto& c : classes) o.expect(validate_tetrahedralization(c.tets, A).ok(), "invalid tetrahedralization");
  std::vector<char> seen(classes.size(), 0);
  std::vector<std::size_t> stack{0};
  seen[0] = 1;
  while (!stack.empty()) {
    auto i = stack.back();
    stack.pop_back();
    for (std::size_t j = 0; j < classes.size(); ++j) {
      if (!seen[j] && tet_flip_adjacency(classes[i].tets, classes[j].tets)) {
        seen[j] = 1;
        stack.push_back(j);
      }
    }
  }
  o.expect(std::count(seen.begin(), seen.end(), 1) == static_cast<long>(classes.size()), "2-3 graph disconnected");
  o.detail << G.size() << " nodes, 1 source, " << G.sinks().size() << " sinks, path lengths {";
  for (auto l : lengths) o.detail << (l == *lengths.begin() ? "" : ",") << l;
  o.detail << "}, " << classes.size() << " tetrahedralizations, connected";
}

void regularity(Outcome& o) {
  auto d = gen_prism6();
  const auto& A = d.points;
  o.expect(!is_regular(d.role("whirl"), A).regular, "whirl reported regular");
  auto L = extreme_triangulation(A, Side::Lower);
  auto r = is_regular(L, A);
  o.expect(r.regular, "lower extreme reported non-regular");
  if (r.regular) {
    std::vector<Point2> pts(A.points().begin(), A.points().end());
    o.expect(extreme_triangulation(LiftedPointSet(pts, r.witness), Side::Lower) == L, "witness does not reproduce");
  }
  o.detail << "whirl NonRegular; regular Regular, witness reproduces it";
}

void schonhardt(Outcome& o) {
  auto d = gen_schonhardt7();
  const auto& A = d.points;
  const auto& X = *d.tetrahedralization;
  o.expect(X.tets.size() == 10, "tet count");
  o.expect(validate_tetrahedralization(X, A).ok(), "invalid");
  auto z = acyclicity_check(X, A, Direction3::z_axis());
  o.expect(!z.acyclic && z.cycle.size() == 3, "no 3-cycle along z");
  o.expect(acyclicity_check(X, A, Direction3(1, 0, 0)).acyclic, "cyclic along x");
  o.expect(tetrahedralization_to_sequence(X, A, Side::Lower).status == TetToSeqStatus::Stuck, "z not stuck");
  auto R = reproject_along_direction(X, A, Direction3(1, 0, 0));
  auto r = tetrahedralization_to_sequence(R.tets, R.points, Side::Lower);
  o.expect(r.status == TetToSeqStatus::Completed, "x not completed");
  if (r.status == TetToSeqStatus::Completed) {
    auto back = sequence_to_tetrahedralization(R.tets.lower, r.sequence, R.points);
    o.expect(sorted(back.tets) == sorted(X.tets), "x round trip differs");
  }
  o.detail << X.tets.size() << " tets; z cycle";
  for (const auto& t : z.cycle) o.detail << ' ' << to_string(t);
  o.detail << "; x acyclic, " << r.sequence.flips.size() << " flips, identical round trip";
}

void convex_heights(Outcome& o) {
  std::vector<Dataset> sets;
  for (Label n = 4; n <= 8; ++n) sets.push_back(gen_convex_ngon(n));
  for (std::uint64_t seed = 1; seed <= 48; ++seed) {
    sets.push_back(gen_random(static_cast<Label>(5 + seed % 4), seed, HeightMode::Convex));
  }
  std::size_t runs = 0, worst_convex = 0, worst_general = 0;
  for (std::size_t i = 0; i < sets.size(); ++i) {
    const auto& A = sets[i].points;
    const auto n = static_cast<std::size_t>(A.size());
    const bool convex_position = A.hull().size() == n;
    const std::size_t bound = convex_position ? choose2(n) : n * n;
    const auto lower = extreme_triangulation(A, Side::Lower);
    for (const auto& T : enumerate_triangulations(A)) {
      for (int p = 0; p < 2; ++p) {
        auto policy = p == 0 ? FlipPolicy::stack() : FlipPolicy::seeded_random(runs);
        auto r = lawson_directed(T, A, Direction::Down, policy);
        ++runs;
        o.expect(r.status == LawsonStatus::ReachedExtreme && r.final == lower,
                 sets[i].name + " from " + T.key() + " did not reach the lower extreme");
        o.expect(r.sequence.flips.size() <= bound, sets[i].name + " exceeded the flip bound");
        auto& worst = convex_position ? worst_convex : worst_general;
        worst = std::max(worst, r.sequence.flips.size());
      }
    }
  }
  o.detail << sets.size() << " datasets, " << runs << " down-runs, all reach the lower extreme; max flips "
           << worst_convex << " (convex position), " << worst_general << " (general)";
}

// Re-verifies a stuck certificate with the oracle.
void check_certificate(Outcome& o, const Triangulation& T, const LiftedPointSet& A, Direction dir,
                       const std::string& name) {
  auto c = stuck_certificate(T, A, dir);
  o.expect(c.redundant_vertices.size() >= 3, name + ": fewer than 3 redundant vertices");
  for (Label v : c.redundant_vertices) o.expect(!A.is_hull_vertex(v), name + ": redundant hull vertex");
  bool long_cycle = false;
  for (const auto& cyc : c.edge_cycles) {
    long_cycle |= cyc.size() >= 3;
    for (Edge e : cyc) {
      const bool present = T.has_edge(e) && T.star(e)->count() == 2;
      o.expect(present, name + ": cycle edge not interior");
      if (!present) continue;
      o.expect(oracle::locally_non_regular(T, e, A, dir == Direction::Up), name + ": cycle edge locally regular");
      o.expect(!oracle::flippable(T, e, A), name + ": cycle edge flippable");
    }
  }
  o.expect(long_cycle, name + ": no edge cycle of length >= 3");
}

// Outer triangle around a shrunken inner triangle twisted by the half-tangent
// t, with small height jitter and optional extra points.
std::optional<LiftedPointSet> twisted_triangles(std::mt19937_64& rng) {
  auto pick = [&](std::initializer_list<long> nums, long den) {
    std::vector<long> v(nums);
    Rat r(v[rng() % v.size()], den);
    r.canonicalize();
    return r;
  };
  const Point2 outer[3] = {{0, 0}, {14, 0}, {7, 12}};
  const Point2 c{7, 4};
  Rat s = pick({3, 4, 5, 6}, 10), t = pick({1, 2, 3, 4, -1, -2, -3, -4}, 10);
  Rat cs = (1 - t * t) / (1 + t * t), sn = 2 * t / (1 + t * t);
  std::vector<Point2> pts(outer, outer + 3);
  std::vector<Rat> hs;
  for (int i = 0; i < 3; ++i) hs.push_back(2 + pick({0, 1, 2, 3}, 20));
  for (int i = 0; i < 3; ++i) {
    Rat dx = outer[i].x - c.x, dy = outer[i].y - c.y;
    pts.push_back({c.x + s * (cs * dx - sn * dy), c.y + s * (sn * dx + cs * dy)});
    hs.push_back(1 + pick({0, 1, 2, 3}, 20));
  }
  for (int extra = static_cast<int>(rng() % 3); extra > 0; --extra) {
    pts.push_back({pick({20, 30, 40, 50, 60, 70, 80, 90, 100}, 10), pick({5, 10, 15, 20, 25}, 10)});
    hs.push_back(pick({10, 15, 20, 25, 30}, 10));
  }
  try {
    return LiftedPointSet(pts, hs);
  } catch (const Error&) {
    return std::nullopt;
  }
}

void stuck_nodes(Outcome& o) {
  auto p = gen_prism6();
  check_certificate(o, p.role("whirl"), p.points, Direction::Up, "prism6 whirl");
  std::size_t stuck = 1, scanned = 0;
  for (std::uint64_t seed = 1; seed <= 60; ++seed) {
    for (HeightMode mode : {HeightMode::Random, HeightMode::Convex, HeightMode::Concave}) {
      auto d = gen_random(static_cast<Label>(6 + seed % 2), seed, mode);
      const auto& A = d.points;
      for (const auto& T : enumerate_triangulations(A)) {
        ++scanned;
        for (Direction dir : {Direction::Up, Direction::Down}) {
          if (!enumerate_directed_flips(T, A, dir).empty()) continue;
          if (T == extreme_triangulation(A, target_side(dir))) continue;
          ++stuck;
          check_certificate(o, T, A, dir, d.name + " " + T.key());
        }
      }
    }
  }
  std::mt19937_64 rng(5);
  for (int k = 0; k < 60; ++k) {
    auto A = twisted_triangles(rng);
    if (!A) continue;
    for (const auto& T : enumerate_triangulations(*A)) {
      ++scanned;
      for (Direction dir : {Direction::Up, Direction::Down}) {
        if (!enumerate_directed_flips(T, *A, dir).empty()) continue;
        if (T == extreme_triangulation(*A, target_side(dir))) continue;
        ++stuck;
        check_certificate(o, T, *A, dir, "twisted triangles " + std::to_string(k) + " " + T.key());
      }
    }
  }
  // A non-regular triangulation with both up- and down-flips.
  std::string witness = "not found";
  for (std::uint64_t seed = 1; seed <= 40 && witness == "not found"; ++seed) {
    auto d = gen_random(8, seed);
    auto G = build_directed_flip_graph(d.points, Direction::Up);
    for (const auto& [key, cls] : classify_nodes(G, d.points)) {
      if (cls != NodeClass::Internal) continue;
      if (!is_regular(G.node(*G.find(key)), d.points).regular) {
        witness = "found (" + d.name + ", " + key + ")";
        break;
      }
    }
  }
  o.detail << stuck << " stuck triangulations (" << scanned
           << " triangulations scanned), all certified; n=8 non-regular internal node: " << witness;
}

void round_trips(Outcome& o, std::vector<Tetrahedralization>& produced, std::vector<LiftedPointSet>& where) {
  std::vector<Dataset> sets{gen_prism6()};
  for (Label n = 5; n <= 7; ++n) sets.push_back(gen_convex_ngon(n));
  std::size_t paths = 0;
  for (const auto& d : sets) {
    const auto& A = d.points;
    auto G = build_directed_flip_graph(A, Direction::Up);
    auto it = maximal_paths(G, A);
    while (auto seq = it.next()) {
      ++paths;
      auto X = sequence_to_tetrahedralization(G.node(it.start()), *seq, A);
      o.expect(validate_tetrahedralization(X, A).ok(), d.name + ": invalid tetrahedralization");
      auto r = tetrahedralization_to_sequence(X, A, Side::Lower);
      o.expect(r.status == TetToSeqStatus::Completed, d.name + ": tet2seq stuck");
      if (r.status == TetToSeqStatus::Completed) {
        auto back = sequence_to_tetrahedralization(X.lower, r.sequence, A);
        o.expect(sorted(back.tets) == sorted(X.tets), d.name + ": tet sets differ");
      }
      produced.push_back(std::move(X));
      where.push_back(A);
    }
  }
  o.detail << paths << " maximal paths (prism6, ngon 5..7) round-trip";
}

void acyclic(Outcome& o, const std::vector<Tetrahedralization>& produced, const std::vector<LiftedPointSet>& where) {
  for (std::size_t i = 0; i < produced.size(); ++i) {
    o.expect(acyclicity_check(produced[i], where[i], Direction3::z_axis()).acyclic, "cycle along z");
  }
  o.detail << produced.size() << " sequence-produced tetrahedralizations acyclic along z";
}

void polyhedron(Outcome& o) {
  auto d = gen_prism6();
  const auto& A = d.points;
  auto ok = triangulate_polyhedron({A, d.role("farthest"), d.role("regular")});
  o.expect(ok.kind == PolyhedronOutcome::Kind::Success, "farthest -> regular not Success");
  o.expect(validate_tetrahedralization(ok.tets, A).ok(), "invalid output");
  o.expect(ok.tets.tets.size() == 4 || ok.tets.tets.size() == 5, "tet count");
  auto bad = triangulate_polyhedron({A, d.role("farthest"), d.role("whirl")});
  o.expect(bad.kind == PolyhedronOutcome::Kind::Indecomposable, "farthest -> whirl not Indecomposable");

  std::size_t runs = 0;
  double worst = 0;
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    for (HeightMode mode : {HeightMode::Convex, HeightMode::Concave}) {
      auto r = gen_random(static_cast<Label>(5 + seed % 4), seed, mode);
      const auto& B = r.points;
      const auto n = static_cast<std::size_t>(B.size());
      auto src = extreme_triangulation(B, mode == HeightMode::Convex ? Side::Upper : Side::Lower);
      for (const auto& T : enumerate_triangulations(B)) {
        TriangulatorOptions opts;
        opts.checks.check_target = false;
        auto out = triangulate_polyhedron({B, src, T}, opts);
        ++runs;
        o.expect(out.stats.conformity_tests <= kConformityConstant * n * n * n, r.name + ": counter above c*n^3");
        worst = std::max(worst, static_cast<double>(out.stats.conformity_tests) / static_cast<double>(n * n * n));
      }
    }
  }
  o.detail << "farthest->regular Success with " << ok.tets.tets.size() << " tets; farthest->whirl Indecomposable; "
           << runs << " runs with conformity tests <= " << kConformityConstant << "*n^3 (max ratio " << worst << ")";
}

void in_circle(Outcome& o) {
  std::mt19937_64 rng(2024);
  auto draw = [&]() {
    Rat r(static_cast<long>(rng() % 201) - 100, static_cast<long>(rng() % 7) + 1);
    r.canonicalize();
    return r;
  };
  int checked = 0, inside = 0;
  while (checked < 1000) {
    Point2 p[4];
    for (auto& q : p) q = {draw(), draw()};
    if (orient2d(p[0], p[1], p[2]) == Sign::Zero) continue;
    auto h = [](const Point2& q) -> Rat { return q.x * q.x + q.y * q.y; };
    Sign s = orient3d_lifted(p[0], h(p[0]), p[1], h(p[1]), p[2], h(p[2]), p[3], h(p[3]));
    int want = oracle::in_circle(p[0], p[1], p[2], p[3]);
    o.expect(static_cast<int>(s) == -want, "disagreement");
    inside += want > 0;
    ++checked;
  }
  o.detail << checked << " quadruples agree (" << inside << " inside)";
}

}  // namespace

int main() {
  std::vector<Tetrahedralization> produced;
  std::vector<LiftedPointSet> where;
  const std::vector<std::pair<std::string, std::function<void(Outcome&)>>> criteria = {
      {"prism6 poset", prism6_poset},
      {"regularity", regularity},
      {"schonhardt7", schonhardt},
      {"convex heights: down-runs reach the lower extreme", convex_heights},
      {"stuck certificates", stuck_nodes},
      {"monotone sequence <-> tetrahedralization", [&](Outcome& o) { round_trips(o, produced, where); }},
      {"sequence-produced tetrahedralizations are acyclic", [&](Outcome& o) { acyclic(o, produced, where); }},
      {"polyhedron triangulator", polyhedron},
      {"orient3d_lifted vs in-circle", in_circle},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    auto t0 = std::chrono::steady_clock::now();
    try {
      criteria[i].second(o);
    } catch (const std::exception& e) {
      o.pass = false;
      o.problems.push_back(std::string("exception: ") + e.what());
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    failed += !o.pass;
    std::cout << (o.pass ? "PASS" : "FAIL") << " criterion " << i + 1 << ": " << criteria[i].first << " -- "
              << o.detail.str() << " [" << std::fixed;
    std::cout.precision(2);
    std::cout << secs << "s]\n";
    std::cout.unsetf(std::ios::fixed);
    std::cout.precision(6);
    for (const auto& p : o.problems) std::cout << "    " << p << '\n';
  }
  std::cout << (failed ? std::to_string(failed) + " criteria failed\n" : "all criteria passed\n");
  return failed ? 1 : 0;
}
