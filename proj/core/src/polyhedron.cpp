#include "flipforge/polyhedron.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include "flipforge/error.hpp"

namespace flipforge {

bool PolyhedronReport::ok() const {
  return std::none_of(issues.begin(), issues.end(), [](const PolyhedronIssue& i) {
    return i.severity == PolyhedronIssue::Severity::Error;
  });
}

bool PolyhedronReport::has(PolyhedronIssue::Kind k) const {
  return std::any_of(issues.begin(), issues.end(), [&](const PolyhedronIssue& i) { return i.kind == k; });
}

std::string PolyhedronReport::summary() const {
  std::ostringstream os;
  for (const auto& i : issues) {
    os << (i.severity == PolyhedronIssue::Severity::Error ? "error: " : "warning: ") << i.message << '\n';
  }
  return os.str();
}

std::string_view to_string(PolyhedronOutcome::Kind k) {
  switch (k) {
    case PolyhedronOutcome::Kind::Success: return "Success";
    case PolyhedronOutcome::Kind::Indecomposable: return "Indecomposable";
    case PolyhedronOutcome::Kind::InvalidInput: return "InvalidInput";
  }
  return "?";
}

PolyhedronReport validate_polyhedron_input(const PolyhedronInput& P, const PolyhedronCheckOptions& opts) {
  using K = PolyhedronIssue::Kind;
  using S = PolyhedronIssue::Severity;
  PolyhedronReport rep;
  auto add = [&](S s, K k, std::string m) { rep.issues.push_back({s, k, std::move(m)}); };
  const LiftedPointSet& A = P.A;

  auto src = validate_triangulation(P.source, A);
  auto tgt = validate_triangulation(P.target, A);
  if (!src.ok()) add(S::Error, K::InvalidSource, "source is not a triangulation: " + src.summary());
  if (!tgt.ok()) add(S::Error, K::InvalidTarget, "target is not a triangulation: " + tgt.summary());

  auto cls = classify_vertices(A);
  bool any_lower = false, any_upper = false;
  for (Label v = 0; v < A.size(); ++v) {
    switch (cls[v]) {
      case VertexClass::NeitherEnvelopeInterior:
        add(S::Error, K::NotConvexPosition,
            "lifted vertex " + std::to_string(v) + " is not a vertex of the lifted hull");
        break;
      case VertexClass::LowerInterior: any_lower = true; break;
      case VertexClass::UpperInterior: any_upper = true; break;
      case VertexClass::HullVertex: break;
    }
  }
  if (any_lower && any_upper) {
    add(S::Error, K::NeitherConvexNorConcave, "heights are neither convex nor concave");
  }
  if (!rep.ok()) return rep;

  bool below = section_leq(P.source, P.target, A);
  bool above = section_leq(P.target, P.source, A);
  if (below) {
    rep.direction = Direction::Up;
  } else if (above) {
    rep.direction = Direction::Down;
  } else {
    add(S::Error, K::SectionsCross, "the source and target sections cross");
    return rep;
  }
  // Termination is only guaranteed for sources without interior vertices.
  for (Label v : P.source.vertices()) {
    if (cls[v] != VertexClass::HullVertex) {
      add(S::Warning, K::SourceHasInteriorVertices,
          "source contains interior vertex " + std::to_string(v));
    }
  }
  if (opts.check_target) {
    if (!is_regular(P.target, A).regular) {
      add(S::Warning, K::TargetNonRegular, "target triangulation is not regular");
    }
    if (A.size() <= opts.max_points_for_poset) {
      try {
        auto G = build_directed_flip_graph(A, *rep.direction, opts.max_nodes);
        auto nc = classify_nodes(G, A).at(P.target.key());
        if (nc == NodeClass::UpperNonExtreme || nc == NodeClass::LowerNonExtreme) {
          add(S::Warning, K::TargetNonExtremeNode,
              "target is a non-extreme node (" + std::string(to_string(nc)) + ")");
        }
      } catch (const Error& e) {
        if (e.code() != ErrorCode::BudgetExceeded) throw;
        add(S::Warning, K::TargetClassUnknown, "poset too large to classify the target");
      }
    } else {
      add(S::Warning, K::TargetClassUnknown, "poset position of the target not checked");
    }
  }
  return rep;
}

namespace {

Rat along(const LiftedPointSet& A, Edge e, const Rat& s) {
  Rat r = A.height(e.u) + s * (A.height(e.v) - A.height(e.u));
  return r;
}

Rat on_triangle(const LiftedPointSet& A, const std::array<Label, 3>& t, const Point2& q) {
  const Point2 &a = A.point(t[0]), &b = A.point(t[1]), &c = A.point(t[2]);
  Rat r = (orient2d_det(q, b, c) * A.height(t[0]) + orient2d_det(a, q, c) * A.height(t[1]) +
           orient2d_det(a, b, q) * A.height(t[2])) /
          orient2d_det(a, b, c);
  return r;
}

}  // namespace

bool is_conforming_flip(const Flip& f, const Triangulation& current, const PolyhedronInput& P,
                        Direction dir) {
  const LiftedPointSet& A = P.A;
  check_applicable(current, f, A);
  const auto added = added_triangles(f);
  auto new_height = [&](const Point2& q) -> std::optional<Rat> {
    for (const auto& t : added) {
      if (point_in_triangle(q, A.point(t[0]), A.point(t[1]), A.point(t[2])).kind !=
          Location::Kind::Outside) {
        return on_triangle(A, t, q);
      }
    }
    return std::nullopt;
  };
  // Up-runs must stay below the target, down-runs above it.
  auto fine = [&](const Rat& mine, const Rat& theirs) {
    return dir == Direction::Up ? mine <= theirs : mine >= theirs;
  };
  for (Label v : f.support) {
    const Point2& p = A.point(v);
    auto g = new_height(p);
    if (g && !fine(*g, section_height(P.target, A, p))) return false;
  }
  for (Label w : P.target.vertices()) {
    if (std::find(f.support.begin(), f.support.end(), w) != f.support.end()) continue;
    auto g = new_height(A.point(w));
    if (g && !fine(*g, A.height(w))) return false;
  }
  std::set<Edge> new_edges;
  for (const auto& t : added) {
    for (int i = 0; i < 3; ++i) new_edges.insert(Edge(t[i], t[(i + 1) % 3]));
  }
  const auto target_edges = P.target.edges();
  for (Edge a : new_edges) {
    for (Edge b : target_edges) {
      const Point2 &p = A.point(a.u), &q = A.point(a.v), &r = A.point(b.u), &s = A.point(b.v);
      if (!segments_properly_cross(p, q, r, s)) continue;
      if (!fine(along(A, a, crossing_parameter(p, q, r, s)), along(A, b, crossing_parameter(r, s, p, q)))) {
        return false;
      }
    }
  }
  return true;
}

PolyhedronOutcome triangulate_polyhedron(const PolyhedronInput& P, const TriangulatorOptions& opts) {
  PolyhedronOutcome out;
  out.kind = PolyhedronOutcome::Kind::InvalidInput;
  out.report = validate_polyhedron_input(P, opts.checks);
  if (!out.report.ok()) return out;
  const LiftedPointSet& A = P.A;
  const Direction dir = *out.report.direction;
  const std::size_t n = static_cast<std::size_t>(A.size());
  const std::size_t flip_cap = n * n * n + 16;

  Triangulation T = P.source;
  out.sequence.start = T.key();
  std::set<Edge> work;
  std::set<Edge> tagged;
  auto is_candidate = [&](Edge e) {
    const EdgeStar* s = T.star(e);
    return s && s->count() == 2 && classify_edge(T, e, A, dir) == EdgeClass::LocallyNonRegular;
  };
  // Only edges that would reach a conformity test, so a refill always makes progress.
  auto testable = [&](Edge e) {
    if (tagged.count(e) || !is_candidate(e) || P.target.has_edge(e)) return false;
    auto f = flip_on_edge(T, e, A);
    return f && f->direction == dir;
  };
  auto refill = [&]() {
    for (Edge e : T.edges()) {
      if (testable(e)) work.insert(e);
    }
  };
  auto apply = [&](const Flip& f) {
    T = apply_flip(T, f, A);
    out.sequence.flips.push_back(f);
    ++out.stats.flips;
    if (out.stats.flips > flip_cap) throw std::logic_error("triangulate_polyhedron: flip cap exceeded");
    auto touches = [&](Edge e) {
      return std::find(f.support.begin(), f.support.end(), e.u) != f.support.end() ||
             std::find(f.support.begin(), f.support.end(), e.v) != f.support.end();
    };
    for (auto it = tagged.begin(); it != tagged.end();) {
      it = touches(*it) ? tagged.erase(it) : std::next(it);
    }
    for (Edge e : T.edges()) {
      if (touches(e) && is_candidate(e)) work.insert(e);
    }
    if (opts.observer) opts.observer(T, f);
  };

  refill();
  while (!(T == P.target)) {
    while (!work.empty()) {
      Edge e = *work.begin();
      work.erase(work.begin());
      if (!testable(e)) continue;
      auto f = flip_on_edge(T, e, A);
      ++out.stats.conformity_tests;
      if (is_conforming_flip(*f, T, P, dir)) {
        apply(*f);
      } else {
        tagged.insert(e);
      }
    }
    if (T == P.target) break;
    refill();
    if (!work.empty()) continue;
    bool inserted = false;
    for (Label v : P.target.vertices()) {
      if (T.has_vertex(v)) continue;
      auto f = insertion_flip(T, v, A);
      if (!f || f->direction != dir) continue;
      ++out.stats.conformity_tests;
      if (is_conforming_flip(*f, T, P, dir)) {
        apply(*f);
        inserted = true;
        break;
      }
    }
    if (!inserted) break;
  }

  if (T == P.target) {
    out.kind = PolyhedronOutcome::Kind::Success;
    out.tets = sequence_to_tetrahedralization(P.source, out.sequence, A);
    return out;
  }
  out.kind = PolyhedronOutcome::Kind::Indecomposable;
  IndecomposableCertificate cert{T, {}, {}, std::nullopt};
  for (Edge e : T.edges()) {
    if (is_candidate(e) && !P.target.has_edge(e)) cert.blocked_edges.push_back(e);
  }
  for (Label v : P.target.vertices()) {
    if (T.has_vertex(v)) continue;
    auto f = insertion_flip(T, v, A);
    if (f && f->direction == dir) cert.blocked_insertions.push_back(v);
  }
  if (enumerate_directed_flips(T, A, dir).empty() && !(T == extreme_triangulation(A, target_side(dir)))) {
    cert.cycles = stuck_certificate(T, A, dir);
  }
  out.certificate = std::move(cert);
  return out;
}

}  // namespace flipforge
