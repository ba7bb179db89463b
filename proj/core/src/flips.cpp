#include "flipforge/flips.hpp"

#include <algorithm>
#include <functional>
#include <random>
#include <set>

#include "flipforge/error.hpp"

namespace flipforge {

std::string_view to_string(FlipKind k) {
  switch (k) {
    case FlipKind::Flip22: return "22";
    case FlipKind::Flip13: return "13";
    case FlipKind::Flip31: return "31";
  }
  return "?";
}

std::string_view to_string(LawsonStatus s) {
  return s == LawsonStatus::ReachedExtreme ? "ReachedExtreme" : "StuckNonExtreme";
}

Flip canonical(Flip f) {
  auto& s = f.support;
  if (f.kind == FlipKind::Flip22) {
    if (s[0] > s[1]) std::swap(s[0], s[1]);
    if (s[2] > s[3]) std::swap(s[2], s[3]);
  } else {
    std::sort(s.begin(), s.begin() + 3);
  }
  return f;
}

Flip inverse(const Flip& f) {
  Flip g = f;
  g.direction = opposite(f.direction);
  switch (f.kind) {
    case FlipKind::Flip22:
      g.support = {f.support[2], f.support[3], f.support[0], f.support[1]};
      break;
    case FlipKind::Flip13: g.kind = FlipKind::Flip31; break;
    case FlipKind::Flip31: g.kind = FlipKind::Flip13; break;
  }
  return g;
}

std::array<Label, 4> support_tet(const Flip& f) {
  auto s = f.support;
  std::sort(s.begin(), s.end());
  return s;
}

std::string notation(const Flip& f) {
  const auto& s = f.support;
  bool wide = std::any_of(s.begin(), s.end(), [](Label v) { return v > 9; });
  auto join = [&](std::initializer_list<Label> ls) {
    std::string out;
    for (Label v : ls) {
      if (!out.empty() && wide) out += '.';
      out += std::to_string(v);
    }
    return out;
  };
  switch (f.kind) {
    case FlipKind::Flip22: return join({s[0], s[1]}) + "-" + join({s[2], s[3]});
    case FlipKind::Flip31: return join({s[0], s[1], s[2]}) + "-" + join({s[3]});
    case FlipKind::Flip13: return join({s[3]}) + "-" + join({s[0], s[1], s[2]});
  }
  return "?";
}

bool flip_order_less(const Flip& x, const Flip& y) {
  auto tx = support_tet(x), ty = support_tet(y);
  if (tx != ty) return tx < ty;
  if (x.kind != y.kind) return x.kind < y.kind;
  return x.support < y.support;
}

std::vector<std::array<Label, 3>> removed_triangles(const Flip& f) {
  const auto& [a, b, c, d] = f.support;
  switch (f.kind) {
    case FlipKind::Flip22: return {{a, b, c}, {a, b, d}};
    case FlipKind::Flip13: return {{a, b, c}};
    case FlipKind::Flip31: return {{a, b, d}, {b, c, d}, {c, a, d}};
  }
  return {};
}

std::vector<std::array<Label, 3>> added_triangles(const Flip& f) {
  Flip g = inverse(f);
  return removed_triangles(g);
}

bool FlipSequence::monotone() const {
  return std::all_of(flips.begin(), flips.end(),
                     [&](const Flip& f) { return f.direction == flips.front().direction; });
}

namespace {

[[noreturn]] void not_applicable(const Flip& f, const std::string& why) {
  throw Error(ErrorCode::NotApplicable, "flip " + notation(f) + ": " + why);
}

int degree(const Triangulation& T, Label v) {
  int k = 0;
  for (const Triangle& t : T.triangles()) {
    k += (t[0] == v || t[1] == v || t[2] == v);
  }
  return k;
}

bool strictly_inside(const LiftedPointSet& A, Label p, Label a, Label b, Label c) {
  return point_in_triangle(A.point(p), A.point(a), A.point(b), A.point(c)).kind ==
         Location::Kind::Inside;
}

}  // namespace

void check_applicable(const Triangulation& T, const Flip& f, const LiftedPointSet& A) {
  const auto& [a, b, c, d] = f.support;
  for (Label v : f.support) {
    if (v < 0 || v >= A.size()) not_applicable(f, "unknown label");
  }
  if (a == b || a == c || a == d || b == c || b == d || c == d) not_applicable(f, "repeated label");
  switch (f.kind) {
    case FlipKind::Flip22: {
      const EdgeStar* s = T.star(Edge(a, b));
      if (!s) not_applicable(f, "edge is not in the triangulation");
      if (!((s->left == c && s->right == d) || (s->left == d && s->right == c))) {
        not_applicable(f, "triangles abc and abd are not both present");
      }
      if (A.orient2d(c, d, a) == A.orient2d(c, d, b)) not_applicable(f, "support is not convex");
      break;
    }
    case FlipKind::Flip13:
      if (!T.has_triangle(a, b, c)) not_applicable(f, "triangle abc is not present");
      if (T.has_vertex(d)) not_applicable(f, "vertex is already present");
      if (!strictly_inside(A, d, a, b, c)) not_applicable(f, "vertex is not inside abc");
      break;
    case FlipKind::Flip31:
      if (!T.has_triangle(a, b, d) || !T.has_triangle(b, c, d) || !T.has_triangle(c, a, d)) {
        not_applicable(f, "link triangles are not all present");
      }
      if (degree(T, d) != 3) not_applicable(f, "vertex does not have degree 3");
      if (!strictly_inside(A, d, a, b, c)) not_applicable(f, "vertex is not inside abc");
      break;
  }
}

namespace {

Direction direction_unchecked(const LiftedPointSet& A, const Flip& f) {
  const auto& [a, b, c, d] = f.support;
  Sign below = A.orient3d_lifted(a, b, c, d);
  bool d_below = below == Sign::Negative;
  switch (f.kind) {
    case FlipKind::Flip22:
    case FlipKind::Flip13:
      return d_below ? Direction::Down : Direction::Up;
    case FlipKind::Flip31:
      return d_below ? Direction::Up : Direction::Down;
  }
  return Direction::Up;
}

Flip with_direction(const LiftedPointSet& A, Flip f) {
  f.direction = direction_unchecked(A, f);
  return canonical(f);
}

}  // namespace

Direction flip_direction(const LiftedPointSet& A, const Flip& f, const Triangulation& T_before) {
  check_applicable(T_before, f, A);
  return direction_unchecked(A, f);
}

Triangulation apply_flip(const Triangulation& T, const Flip& f, const LiftedPointSet& A) {
  check_applicable(T, f, A);
  std::vector<std::array<Label, 3>> gone;
  for (const auto& t : removed_triangles(f)) gone.push_back(sorted_triple(t[0], t[1], t[2]));
  std::vector<std::array<Label, 3>> tris;
  tris.reserve(T.size() + 2);
  for (const Triangle& t : T.triangles()) {
    auto s = sorted_triple(t[0], t[1], t[2]);
    if (std::find(gone.begin(), gone.end(), s) == gone.end()) tris.push_back(t);
  }
  for (const auto& t : added_triangles(f)) tris.push_back(t);
  return Triangulation(A, std::move(tris));
}

std::optional<Flip> flip_on_edge(const Triangulation& T, Edge e, const LiftedPointSet& A) {
  const EdgeStar* s = T.star(e);
  if (!s || s->count() < 2) return std::nullopt;
  Flippability fl = classify_flippability(T, e, A);
  switch (fl.kind) {
    case Flippability::Kind::Flip22:
      return with_direction(A, {FlipKind::Flip22, {e.u, e.v, s->left, s->right}, Direction::Up});
    case Flippability::Kind::Flip31: {
      Label other = fl.vertex == e.u ? e.v : e.u;
      return with_direction(A, {FlipKind::Flip31, {other, s->left, s->right, fl.vertex}, Direction::Up});
    }
    case Flippability::Kind::Unflippable:
      return std::nullopt;
  }
  return std::nullopt;
}

std::optional<Flip> insertion_flip(const Triangulation& T, Label p, const LiftedPointSet& A) {
  if (T.has_vertex(p)) return std::nullopt;
  auto idx = locate(T, A, A.point(p));
  if (!idx) return std::nullopt;
  const Triangle& t = T.triangles()[*idx];
  return with_direction(A, {FlipKind::Flip13, {t[0], t[1], t[2], p}, Direction::Up});
}

namespace {

void sort_unique(std::vector<Flip>& v) {
  std::sort(v.begin(), v.end(), flip_order_less);
  v.erase(std::unique(v.begin(), v.end()), v.end());
}

std::vector<Flip> edge_flips(const Triangulation& T, const LiftedPointSet& A,
                             std::optional<Direction> dir) {
  std::vector<Flip> out;
  for (Edge e : T.edges()) {
    const EdgeStar* s = T.star(e);
    if (s->count() < 2) continue;
    if (dir && classify_edge(T, e, A, *dir) != EdgeClass::LocallyNonRegular) continue;
    auto f = flip_on_edge(T, e, A);
    if (f && (!dir || f->direction == *dir)) out.push_back(*f);
  }
  sort_unique(out);
  return out;
}

std::vector<Flip> insertions(const Triangulation& T, const LiftedPointSet& A,
                             std::optional<Direction> dir) {
  std::vector<Flip> out;
  for (Label p = 0; p < A.size(); ++p) {
    auto f = insertion_flip(T, p, A);
    if (f && (!dir || f->direction == *dir)) out.push_back(*f);
  }
  sort_unique(out);
  return out;
}

}  // namespace

std::vector<Flip> enumerate_directed_flips(const Triangulation& T, const LiftedPointSet& A,
                                           Direction dir) {
  auto out = edge_flips(T, A, dir);
  auto ins = insertions(T, A, dir);
  out.insert(out.end(), ins.begin(), ins.end());
  sort_unique(out);
  return out;
}

std::vector<Flip> enumerate_all_flips(const Triangulation& T, const LiftedPointSet& A) {
  auto out = edge_flips(T, A, std::nullopt);
  auto ins = insertions(T, A, std::nullopt);
  out.insert(out.end(), ins.begin(), ins.end());
  sort_unique(out);
  return out;
}

std::vector<Flip> policy_candidates(const Triangulation& T, const LiftedPointSet& A, Direction dir) {
  auto out = edge_flips(T, A, dir);
  auto ins = insertions(T, A, dir);
  out.insert(out.end(), ins.begin(), ins.end());
  return out;
}

namespace {

class EdgeStack {
 public:
  void push(Edge e) {
    if (member_.insert(e).second) items_.push_back(e);
  }
  bool empty() const { return items_.empty(); }
  Edge pop() {
    Edge e = items_.back();
    items_.pop_back();
    member_.erase(e);
    return e;
  }
  // Pushes in descending order so the lowest edge pops first.
  void push_all(std::vector<Edge> es) {
    std::sort(es.begin(), es.end());
    for (auto it = es.rbegin(); it != es.rend(); ++it) push(*it);
  }

 private:
  std::vector<Edge> items_;
  std::set<Edge> member_;
};

std::vector<Edge> edges_of(const std::vector<std::array<Label, 3>>& tris) {
  std::vector<Edge> out;
  for (const auto& t : tris) {
    out.emplace_back(t[0], t[1]);
    out.emplace_back(t[1], t[2]);
    out.emplace_back(t[2], t[0]);
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

LawsonResult finish(Triangulation T, FlipSequence seq, const LiftedPointSet& A, Direction dir) {
  bool extreme = T == extreme_triangulation(A, target_side(dir));
  return {std::move(T), std::move(seq),
          extreme ? LawsonStatus::ReachedExtreme : LawsonStatus::StuckNonExtreme};
}

std::size_t flip_cap(const LiftedPointSet& A) {
  std::size_t n = static_cast<std::size_t>(A.size());
  return n * n * n + 16;
}

LawsonResult lawson_stack(const Triangulation& T0, const LiftedPointSet& A, Direction dir) {
  Triangulation T = T0;
  FlipSequence seq{T0.key(), {}};
  EdgeStack stack;
  stack.push_all(T.edges());
  auto apply = [&](const Flip& f) {
    T = apply_flip(T, f, A);
    seq.flips.push_back(f);
    if (seq.flips.size() > flip_cap(A)) throw std::logic_error("lawson_directed: flip cap exceeded");
    stack.push_all(edges_of(added_triangles(f)));
  };
  while (true) {
    while (!stack.empty()) {
      Edge e = stack.pop();
      const EdgeStar* s = T.star(e);
      if (!s || s->count() < 2) continue;
      if (classify_edge(T, e, A, dir) != EdgeClass::LocallyNonRegular) continue;
      auto f = flip_on_edge(T, e, A);
      if (f && f->direction == dir) apply(*f);
    }
    auto rescan = edge_flips(T, A, dir);
    if (!rescan.empty()) {
      std::vector<Edge> es;
      for (const Flip& f : rescan) {
        auto fe = edges_of(removed_triangles(f));
        es.insert(es.end(), fe.begin(), fe.end());
      }
      stack.push_all(es);
      continue;
    }
    auto ins = insertions(T, A, dir);
    if (ins.empty()) break;
    // Lowest inserted label first.
    auto best = std::min_element(ins.begin(), ins.end(), [](const Flip& x, const Flip& y) {
      return x.support[3] < y.support[3];
    });
    apply(*best);
  }
  return finish(std::move(T), std::move(seq), A, dir);
}

}  // namespace

LawsonResult lawson_directed(const Triangulation& T0, const LiftedPointSet& A, Direction dir,
                             const FlipPolicy& policy) {
  if (policy.kind == FlipPolicy::Kind::Stack) return lawson_stack(T0, A, dir);
  Triangulation T = T0;
  FlipSequence seq{T0.key(), {}};
  std::mt19937_64 rng(policy.seed);
  for (std::size_t step = 0;; ++step) {
    auto cands = policy_candidates(T, A, dir);
    if (cands.empty()) break;
    std::size_t pick = 0;
    if (policy.kind == FlipPolicy::Kind::Indexed && step < policy.indices.size()) {
      pick = policy.indices[step];
      if (pick >= cands.size()) {
        throw Error(ErrorCode::NotApplicable, "policy index " + std::to_string(pick) + " at step " +
                                                  std::to_string(step) + " exceeds " +
                                                  std::to_string(cands.size()) + " candidates");
      }
    } else if (policy.kind == FlipPolicy::Kind::SeededRandom) {
      pick = static_cast<std::size_t>(rng() % cands.size());
    }
    T = apply_flip(T, cands[pick], A);
    seq.flips.push_back(cands[pick]);
    if (seq.flips.size() > flip_cap(A)) throw std::logic_error("lawson_directed: flip cap exceeded");
  }
  return finish(std::move(T), std::move(seq), A, dir);
}

StuckCertificate stuck_certificate(const Triangulation& T, const LiftedPointSet& A, Direction dir) {
  if (!enumerate_directed_flips(T, A, dir).empty()) {
    throw Error(ErrorCode::NotStuck, "triangulation still has " + std::string(to_string(dir)) + "-flips");
  }
  if (T == extreme_triangulation(A, target_side(dir))) {
    throw Error(ErrorCode::NotStuck, "triangulation is the extreme one");
  }
  StuckCertificate cert;
  const Label n = A.size();
  std::vector<std::vector<Label>> out(n);
  for (Edge e : T.edges()) {
    if (classify_edge(T, e, A, dir) != EdgeClass::LocallyNonRegular) continue;
    Flippability fl = classify_flippability(T, e, A);
    if (fl.kind != Flippability::Kind::Unflippable) continue;
    Label p = fl.vertex;
    Label a = p == e.u ? e.v : e.u;
    cert.arcs.push_back({a, p});
    out[a].push_back(p);
  }
  for (auto& v : out) std::sort(v.begin(), v.end());

  // Elementary cycles, each reported once starting from its smallest vertex.
  std::vector<Label> path;
  std::vector<char> on_path(n, 0);
  std::function<void(Label, Label)> dfs = [&](Label start, Label v) {
    for (Label w : out[v]) {
      if (w == start) {
        cert.vertex_cycles.push_back(path);
      } else if (w > start && !on_path[w]) {
        on_path[w] = 1;
        path.push_back(w);
        dfs(start, w);
        path.pop_back();
        on_path[w] = 0;
      }
    }
  };
  for (Label s = 0; s < n; ++s) {
    path = {s};
    on_path[s] = 1;
    dfs(s, s);
    on_path[s] = 0;
  }
  std::set<Label> redundant;
  for (const auto& cyc : cert.vertex_cycles) {
    std::vector<Edge> es;
    for (std::size_t i = 0; i < cyc.size(); ++i) {
      es.emplace_back(cyc[i], cyc[(i + 1) % cyc.size()]);
      redundant.insert(cyc[i]);
    }
    cert.edge_cycles.push_back(std::move(es));
  }
  cert.redundant_vertices.assign(redundant.begin(), redundant.end());
  return cert;
}

}  // namespace flipforge
