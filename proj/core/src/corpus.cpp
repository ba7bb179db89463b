#include "flipforge/corpus.hpp"

#include <algorithm>
#include <random>
#include <set>

#include "flipforge/error.hpp"
#include "flipforge/flip_graph.hpp"

namespace flipforge {

namespace {

// Rotation by the angle whose half-tangent is t; exact on rationals.
Point2 rotate(const Point2& p, const Rat& t) {
  Rat den = 1 + t * t;
  Rat c = (1 - t * t) / den, s = 2 * t / den;
  return {c * p.x - s * p.y, s * p.x + c * p.y};
}

std::optional<LiftedPointSet> try_points(std::vector<Point2> pts, std::vector<Rat> hs) {
  try {
    return LiftedPointSet(std::move(pts), std::move(hs));
  } catch (const Error& e) {
    if (e.code() != ErrorCode::DegenerateInput) throw;
    return std::nullopt;
  }
}

std::uint64_t catalan(unsigned k) {
  std::uint64_t c = 1;
  for (unsigned i = 0; i < k; ++i) c = c * 2 * (2 * i + 1) / (i + 2);
  return c;
}

}  // namespace

std::string_view to_string(HeightMode m) {
  switch (m) {
    case HeightMode::Random: return "random";
    case HeightMode::Convex: return "convex";
    case HeightMode::Concave: return "concave";
  }
  return "?";
}

Dataset gen_prism6() {
  const std::vector<Point2> outer = {{0, 0}, {14, 0}, {7, 12}};
  const Point2 g{7, 4};
  const std::vector<Rat> scales = {Rat(1, 2), Rat(2, 5), Rat(3, 5), Rat(1, 3)};
  const std::vector<Rat> twists = {Rat(1, 10), Rat(1, 8), Rat(1, 6), Rat(1, 5), Rat(1, 4), Rat(1, 3)};
  for (const Rat& s : scales) {
    for (const Rat& t : twists) {
      std::vector<Point2> pts = outer;
      for (const Point2& o : outer) {
        Point2 r = rotate({s * (o.x - g.x), s * (o.y - g.y)}, t);
        pts.push_back({g.x + r.x, g.y + r.y});
      }
      auto A = try_points(pts, {2, 2, 2, 1, 1, 1});
      if (!A) continue;
      auto G = build_directed_flip_graph(*A, Direction::Up);
      std::vector<std::size_t> nonregular;
      for (std::size_t i = 0; i < G.size(); ++i) {
        if (!is_regular(G.node(i), *A).regular) nonregular.push_back(i);
      }
      if (nonregular.size() != 1 || G.sinks().size() != 2) continue;
      Triangulation regular = extreme_triangulation(*A, Side::Lower);
      Triangulation farthest = extreme_triangulation(*A, Side::Upper);
      Dataset d{"prism6", *A, {}, std::nullopt, {}};
      d.triangulations = {{"regular", regular}, {"farthest", farthest},
                          {"whirl", G.node(nonregular[0])}, {"source", farthest},
                          {"target", regular}};
      d.facts = {
          {"unique up-source",
           [](const Dataset& d) { return build_directed_flip_graph(d.points, Direction::Up).sources().size() == 1; }},
          {"two up-sinks",
           [](const Dataset& d) { return build_directed_flip_graph(d.points, Direction::Up).sinks().size() == 2; }},
          {"six tetrahedralizations with 4 or 5 tets",
           [](const Dataset& d) {
             auto G = build_directed_flip_graph(d.points, Direction::Up);
             auto ts = distinct_tetrahedralizations(G, d.points);
             return ts.size() == 6 && std::all_of(ts.begin(), ts.end(), [](const auto& c) {
                      return c.tets.tets.size() == 4 || c.tets.tets.size() == 5;
                    });
           }},
          {"whirl is non-regular",
           [](const Dataset& d) { return !is_regular(d.role("whirl"), d.points).regular; }},
      };
      return d;
    }
  }
  throw Error(ErrorCode::GenerationFailed, "no prism6 parameter passed verification");
}

namespace {

struct SchonhardtCandidate {
  LiftedPointSet A;
  Tetrahedralization X;
};

Tet tet_of(Label a, Label b, Label c, Label d) { return make_tet(a, b, c, d); }

// Heights are mirrored (the apex sits above the bottom face, the top hangs
// below) and sheared by shear*(x + 2y) so that no face is parallel to x.
std::optional<SchonhardtCandidate> schonhardt_candidate(const Rat& twist, const Rat& scale, const Rat& height,
                                                        const Rat& depth, const Rat& spin, const Rat& shear) {
  const std::vector<Point2> bottom = {{0, 10}, {-9, -5}, {9, -5}};
  std::vector<Point2> pts;
  std::vector<Rat> hs;
  for (const Point2& b : bottom) {
    pts.push_back(rotate(b, spin));
    hs.push_back(0);
  }
  for (const Point2& b : bottom) {
    Point2 r = rotate({scale * b.x, scale * b.y}, twist);
    pts.push_back(rotate(r, spin));
    hs.push_back(height);
  }
  pts.push_back(rotate({Rat(1, 3), Rat(1, 4)}, spin));
  hs.push_back(-depth);
  for (std::size_t i = 0; i < hs.size(); ++i) hs[i] = shear * (pts[i].x + 2 * pts[i].y) - hs[i];
  auto A = try_points(pts, hs);
  if (!A) return std::nullopt;

  // The hull of the prism takes one diagonal of each side quad; the
  // Schonhardt polyhedron needs it to be b(i+1) t(i) so that b(i) t(i+1) is reflex.
  LiftedPointSet P6(std::vector<Point2>(pts.begin(), pts.begin() + 6), std::vector<Rat>(hs.begin(), hs.begin() + 6));
  Triangulation up6 = extreme_triangulation(P6, Side::Upper);
  Triangulation low6 = extreme_triangulation(P6, Side::Lower);
  for (Label i = 0; i < 3; ++i) {
    Edge diagonal((i + 1) % 3, 3 + i);
    if (!up6.has_edge(diagonal) && !low6.has_edge(diagonal)) return std::nullopt;
  }
  const Label apex = 6;
  std::vector<Tet> tets;
  for (Label i = 0; i < 3; ++i) {
    Label bi = i, bj = (i + 1) % 3, ti = 3 + i, tj = 3 + (i + 1) % 3;
    tets.push_back(tet_of(apex, bi, bj, tj));
    tets.push_back(tet_of(apex, bi, tj, ti));
    tets.push_back(tet_of(bi, bj, ti, tj));
  }
  tets.push_back(tet_of(apex, 3, 4, 5));
  std::sort(tets.begin(), tets.end());
  Tetrahedralization X{tets, extreme_triangulation(*A, Side::Lower), extreme_triangulation(*A, Side::Upper)};
  return SchonhardtCandidate{*A, X};
}

bool schonhardt_verified(const SchonhardtCandidate& c) {
  const auto& A = c.A;
  const auto& X = c.X;
  if (X.tets.size() != 10 || !validate_tetrahedralization(X, A).ok()) return false;
  const Direction3 z(0, 0, 1), x(1, 0, 0);
  const Tet t1 = make_tet(0, 2, 6, 3), t2 = make_tet(0, 1, 6, 4), t3 = make_tet(1, 2, 6, 5);
  auto before = [&](const Tet& a, const Tet& b) {
    auto o = infront_behind(a, b, A, z);
    return o && *o == DepthOrder::FirstBeforeSecond;
  };
  if (!before(t1, t2) || !before(t2, t3) || !before(t3, t1)) return false;
  auto zc = acyclicity_check(X, A, z);
  if (zc.acyclic || zc.cycle.size() != 3) return false;
  if (!acyclicity_check(X, A, x).acyclic) return false;
  try {
    auto R = reproject_along_direction(X, A, x);
    if (tetrahedralization_to_sequence(R.tets, R.points, Side::Lower).status != TetToSeqStatus::Completed) {
      return false;
    }
  } catch (const Error&) {
    return false;
  }
  return tetrahedralization_to_sequence(X, A, Side::Lower).status == TetToSeqStatus::Stuck;
}

}  // namespace

Dataset gen_schonhardt7() {
  const std::vector<Rat> twists = {Rat(1, 10), Rat(1, 8), Rat(1, 6), Rat(1, 5)};
  const std::vector<Rat> depths = {Rat(1), Rat(2), Rat(1, 2)};
  const std::vector<Rat> shears = {Rat(1, 7), Rat(1, 5), Rat(1, 3)};
  const std::vector<Rat> spins = {Rat(1, 7), Rat(1, 5), Rat(2, 9)};
  const std::vector<Rat> heights = {Rat(10), Rat(12)};
  const Rat scale(1);
  for (const Rat& spin : spins) {
    for (const Rat& twist : twists) {
      for (const Rat& shear : shears) {
        for (const Rat& h : heights) {
          for (const Rat& depth : depths) {
            auto c = schonhardt_candidate(twist, scale, h, depth, spin, shear);
            if (!c || !schonhardt_verified(*c)) continue;
            Dataset d{"schonhardt7", c->A, {}, c->X, {}};
            d.triangulations = {{"lower", c->X.lower}, {"upper", c->X.upper}};
            d.facts = {
                {"10 tets, valid",
                 [](const Dataset& d) {
                   return d.tetrahedralization->tets.size() == 10 &&
                          validate_tetrahedralization(*d.tetrahedralization, d.points).ok();
                 }},
                {"3-cycle along z",
                 [](const Dataset& d) {
                   auto r = acyclicity_check(*d.tetrahedralization, d.points, Direction3(0, 0, 1));
                   return !r.acyclic && r.cycle.size() == 3;
                 }},
                {"acyclic along x",
                 [](const Dataset& d) {
                   return acyclicity_check(*d.tetrahedralization, d.points, Direction3(1, 0, 0)).acyclic;
                 }},
                {"tet2seq completes along x",
                 [](const Dataset& d) {
                   auto R = reproject_along_direction(*d.tetrahedralization, d.points, Direction3(1, 0, 0));
                   return tetrahedralization_to_sequence(R.tets, R.points, Side::Lower).status ==
                          TetToSeqStatus::Completed;
                 }},
            };
            return d;
          }
        }
      }
    }
  }
  throw Error(ErrorCode::GenerationFailed, "no schonhardt7 parameter passed verification");
}

Dataset gen_convex_ngon(Label n) {
  if (n < 3) throw Error(ErrorCode::DegenerateInput, "n-gon needs n >= 3");
  std::vector<Point2> pts;
  std::vector<Rat> hs;
  for (Label k = 0; k < n; ++k) {
    pts.push_back({k, k * k});
    hs.push_back(Rat(k * k) + Rat(k * k) * Rat(k * k));
  }
  Dataset d{"ngon" + std::to_string(n), LiftedPointSet(std::move(pts), std::move(hs)), {}, std::nullopt, {}};
  d.triangulations = {{"regular", extreme_triangulation(d.points, Side::Lower)},
                      {"farthest", extreme_triangulation(d.points, Side::Upper)}};
  d.facts = {
      {"Catalan(n-2) triangulations",
       [n](const Dataset& d) {
         return enumerate_triangulations(d.points).size() == catalan(static_cast<unsigned>(n - 2));
       }},
      {"bounded poset",
       [](const Dataset& d) {
         auto G = build_directed_flip_graph(d.points, Direction::Up);
         return G.sources().size() == 1 && G.sinks().size() == 1;
       }},
  };
  return d;
}

Dataset gen_random(Label n, std::uint64_t seed, HeightMode mode) {
  if (n < 3) throw Error(ErrorCode::DegenerateInput, "need n >= 3");
  std::mt19937_64 rng(seed);
  // Uniform p/q with q in 1..4 and |p/q| <= bound, from raw 64-bit draws so
  // the stream is portable.
  auto draw = [&](long bound) {
    long q = static_cast<long>(rng() % 4) + 1;
    long span = 2 * bound * q + 1;
    long p = static_cast<long>(rng() % static_cast<std::uint64_t>(span)) - bound * q;
    Rat r(p, q);
    r.canonicalize();
    return r;
  };
  for (int attempt = 0; attempt < 10000; ++attempt) {
    std::vector<Point2> pts;
    for (Label i = 0; i < n; ++i) {
      Rat x = draw(10), y = draw(10);
      pts.push_back({x, y});
    }
    std::vector<Rat> hs;
    Rat a = draw(3), b = draw(3), c = draw(3);
    for (const Point2& p : pts) {
      Rat paraboloid = p.x * p.x + p.y * p.y;
      Rat affine = a * p.x + b * p.y + c;
      switch (mode) {
        case HeightMode::Random: hs.push_back(draw(20)); break;
        case HeightMode::Convex: hs.push_back(paraboloid + affine); break;
        case HeightMode::Concave: hs.push_back(-paraboloid + affine); break;
      }
    }
    auto A = try_points(std::move(pts), std::move(hs));
    if (!A) continue;
    std::string name = mode == HeightMode::Random ? "random" : "random-" + std::string(to_string(mode));
    Dataset d{name + "-n" + std::to_string(n) + "-s" + std::to_string(seed), *A, {}, std::nullopt, {}};
    d.triangulations = {{"regular", extreme_triangulation(d.points, Side::Lower)},
                        {"farthest", extreme_triangulation(d.points, Side::Upper)}};
    if (mode == HeightMode::Convex) {
      d.facts.push_back({"regular triangulation uses every point", [](const Dataset& d) {
                           return d.role("regular").vertices().size() == static_cast<std::size_t>(d.points.size());
                         }});
    }
    return d;
  }
  throw Error(ErrorCode::GenerationFailed, "could not sample a point set in general position");
}

Dataset generate(const std::string& name, Label n, std::uint64_t seed) {
  if (name == "prism6") return gen_prism6();
  if (name == "schonhardt7") return gen_schonhardt7();
  if (name == "ngon") return gen_convex_ngon(n);
  if (name == "random") return gen_random(n, seed, HeightMode::Random);
  if (name == "random-convex") return gen_random(n, seed, HeightMode::Convex);
  if (name == "random-concave") return gen_random(n, seed, HeightMode::Concave);
  throw Error(ErrorCode::ParseError, "unknown dataset '" + name + "'");
}

}  // namespace flipforge
