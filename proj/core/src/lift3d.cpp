#include "flipforge/lift3d.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <random>
#include <set>
#include <sstream>

#include "flipforge/error.hpp"

namespace flipforge {

Tet make_tet(Label a, Label b, Label c, Label d) {
  Tet t = {a, b, c, d};
  std::sort(t.begin(), t.end());
  return t;
}

std::string to_string(const Tet& t) {
  return "t" + std::to_string(t[0]) + "." + std::to_string(t[1]) + "." + std::to_string(t[2]) + "." +
         std::to_string(t[3]);
}

std::string_view to_string(TetToSeqStatus s) {
  return s == TetToSeqStatus::Completed ? "Completed" : "Stuck";
}

namespace {

Rat interpolate(const Point2& q, const Point2& a, const Rat& ha, const Point2& b, const Rat& hb,
                const Point2& c, const Rat& hc) {
  Rat total = orient2d_det(a, b, c);
  Rat r = (orient2d_det(q, b, c) * ha + orient2d_det(a, q, c) * hb + orient2d_det(a, b, q) * hc) / total;
  return r;
}

Rat interpolate_on(const Triangle& t, const LiftedPointSet& A, const Point2& q) {
  return interpolate(q, A.point(t[0]), A.height(t[0]), A.point(t[1]), A.height(t[1]),
                     A.point(t[2]), A.height(t[2]));
}

// Height along segment uv at parameter s.
Rat along(const LiftedPointSet& A, Label u, Label v, const Rat& s) {
  Rat r = A.height(u) + s * (A.height(v) - A.height(u));
  return r;
}

}  // namespace

Rat section_height(const Triangulation& T, const LiftedPointSet& A, const Point2& q) {
  auto idx = locate(T, A, q);
  if (!idx) throw Error(ErrorCode::OutsideDomain, "query point lies outside the triangulation");
  return interpolate_on(T.triangles()[*idx], A, q);
}

bool section_leq(const Triangulation& T1, const Triangulation& T2, const LiftedPointSet& A) {
  std::set<Label> verts(T1.vertices().begin(), T1.vertices().end());
  verts.insert(T2.vertices().begin(), T2.vertices().end());
  for (Label v : verts) {
    const Point2& p = A.point(v);
    Rat g1 = T1.has_vertex(v) ? A.height(v) : section_height(T1, A, p);
    Rat g2 = T2.has_vertex(v) ? A.height(v) : section_height(T2, A, p);
    if (g1 > g2) return false;
  }
  auto e1 = T1.edges();
  auto e2 = T2.edges();
  for (Edge a : e1) {
    for (Edge b : e2) {
      const Point2 &p = A.point(a.u), &q = A.point(a.v), &r = A.point(b.u), &s = A.point(b.v);
      if (!segments_properly_cross(p, q, r, s)) continue;
      Rat g1 = along(A, a.u, a.v, crossing_parameter(p, q, r, s));
      Rat g2 = along(A, b.u, b.v, crossing_parameter(r, s, p, q));
      if (g1 > g2) return false;
    }
  }
  return true;
}

Tetrahedralization sequence_to_tetrahedralization(const Triangulation& T_u, const FlipSequence& seq,
                                                  const LiftedPointSet& A) {
  if (!seq.start.empty() && seq.start != T_u.key()) {
    throw Error(ErrorCode::NotApplicable, "sequence does not start at the given triangulation");
  }
  Tetrahedralization X;
  Triangulation T = T_u;
  std::optional<Direction> dir;
  for (const Flip& f : seq.flips) {
    Direction actual = flip_direction(A, f, T);
    if (actual != f.direction) {
      throw Error(ErrorCode::NotApplicable, "flip " + notation(f) + " is recorded as " +
                                                std::string(to_string(f.direction)) + " but is " +
                                                std::string(to_string(actual)));
    }
    if (dir && *dir != actual) {
      throw Error(ErrorCode::NotMonotone, "flip " + notation(f) + " reverses direction");
    }
    dir = actual;
    T = apply_flip(T, f, A);
    X.tets.push_back(support_tet(f));
  }
  if (!dir || *dir == Direction::Up) {
    X.lower = T_u;
    X.upper = T;
  } else {
    X.lower = T;
    X.upper = T_u;
  }
  return X;
}

bool TetValidationReport::has(TetViolation::Kind k) const {
  return std::any_of(violations.begin(), violations.end(),
                     [&](const TetViolation& v) { return v.kind == k; });
}

std::string TetValidationReport::summary() const {
  std::ostringstream os;
  for (const auto& v : violations) os << v.message << '\n';
  return os.str();
}

namespace {

Point3 sub(const Point3& a, const Point3& b) { return {a.x - b.x, a.y - b.y, a.z - b.z}; }
Point3 cross(const Point3& a, const Point3& b) {
  return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x};
}
Rat dot(const Point3& a, const Point3& b) {
  Rat r = a.x * b.x + a.y * b.y + a.z * b.z;
  return r;
}

// Two tets have disjoint interiors iff one of the face normals or
// edge-pair cross products weakly separates them.
bool interiors_disjoint(const std::array<Point3, 4>& p, const std::array<Point3, 4>& q) {
  std::vector<Point3> axes;
  for (const auto* t : {&p, &q}) {
    const auto& v = *t;
    for (int i = 0; i < 4; ++i) {
      int a = (i + 1) % 4, b = (i + 2) % 4, c = (i + 3) % 4;
      axes.push_back(cross(sub(v[b], v[a]), sub(v[c], v[a])));
    }
  }
  static constexpr int kEdges[6][2] = {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}};
  for (const auto& e : kEdges) {
    for (const auto& f : kEdges) {
      axes.push_back(cross(sub(p[e[1]], p[e[0]]), sub(q[f[1]], q[f[0]])));
    }
  }
  for (const Point3& n : axes) {
    if (n.x == 0 && n.y == 0 && n.z == 0) continue;
    Rat pmin = dot(n, p[0]), pmax = pmin, qmin = dot(n, q[0]), qmax = qmin;
    for (int i = 1; i < 4; ++i) {
      Rat a = dot(n, p[i]), b = dot(n, q[i]);
      if (a < pmin) pmin = a;
      if (a > pmax) pmax = a;
      if (b < qmin) qmin = b;
      if (b > qmax) qmax = b;
    }
    if (pmax <= qmin || qmax <= pmin) return true;
  }
  return false;
}

std::array<std::array<Label, 3>, 4> faces_of(const Tet& t) {
  return {{{t[1], t[2], t[3]}, {t[0], t[2], t[3]}, {t[0], t[1], t[3]}, {t[0], t[1], t[2]}}};
}

Rat abs_area2(const LiftedPointSet& A, const Triangle& t) {
  Rat a = orient2d_det(A.point(t[0]), A.point(t[1]), A.point(t[2]));
  return abs(a);
}

// Six times the integral of the section of T over its domain.
Rat section_integral6(const LiftedPointSet& A, const Triangulation& T) {
  Rat sum = 0;
  for (const Triangle& t : T.triangles()) {
    sum += abs_area2(A, t) * (A.height(t[0]) + A.height(t[1]) + A.height(t[2]));
  }
  return sum;
}

}  // namespace

TetValidationReport validate_tetrahedralization(const Tetrahedralization& X, const LiftedPointSet& A,
                                                std::size_t pairwise_limit) {
  using Kind = TetViolation::Kind;
  TetValidationReport rep;
  auto add = [&](Kind k, std::vector<Label> s, std::string msg) {
    rep.violations.push_back({k, std::move(s), std::move(msg)});
  };
  auto tri_name = [](const std::array<Label, 3>& f) {
    return std::to_string(f[0]) + " " + std::to_string(f[1]) + " " + std::to_string(f[2]);
  };
  std::vector<Tet> tets;
  for (Tet t : X.tets) {
    bool known = std::all_of(t.begin(), t.end(), [&](Label v) { return v >= 0 && v < A.size(); });
    std::sort(t.begin(), t.end());
    if (!known) {
      add(Kind::UnknownVertex, {t.begin(), t.end()}, to_string(t) + " uses an unknown label");
      continue;
    }
    if (std::adjacent_find(t.begin(), t.end()) != t.end() ||
        A.orient3d(t[0], t[1], t[2], t[3]) == Sign::Zero) {
      add(Kind::DegenerateTet, {t.begin(), t.end()}, to_string(t) + " is degenerate");
      continue;
    }
    tets.push_back(t);
  }
  std::sort(tets.begin(), tets.end());
  for (std::size_t i = 1; i < tets.size(); ++i) {
    if (tets[i] == tets[i - 1]) {
      add(Kind::DuplicateTet, {tets[i].begin(), tets[i].end()}, to_string(tets[i]) + " appears twice");
    }
  }
  tets.erase(std::unique(tets.begin(), tets.end()), tets.end());

  // Face uses against the boundary: the faces of the two sections that are
  // not shared between them.
  std::map<std::array<Label, 3>, int> uses;
  for (const Tet& t : tets) {
    for (const auto& f : faces_of(t)) ++uses[f];
  }
  std::set<std::array<Label, 3>> lower, upper, boundary;
  for (const Triangle& t : X.lower.triangles()) lower.insert(sorted_triple(t[0], t[1], t[2]));
  for (const Triangle& t : X.upper.triangles()) upper.insert(sorted_triple(t[0], t[1], t[2]));
  std::set_symmetric_difference(lower.begin(), lower.end(), upper.begin(), upper.end(),
                                std::inserter(boundary, boundary.end()));
  for (const auto& [f, n] : uses) {
    bool on_boundary = boundary.count(f) > 0;
    if (n > 2 || (n == 2 && on_boundary)) {
      add(Kind::FaceOveruse, {f.begin(), f.end()},
          "face " + tri_name(f) + " is used by " + std::to_string(n) + " tets");
    } else if (n == 1 && !on_boundary) {
      add(Kind::DanglingFace, {f.begin(), f.end()},
          "interior face " + tri_name(f) + " is used by a single tet");
    }
  }
  for (const auto& f : boundary) {
    if (!uses.count(f)) {
      add(Kind::UncoveredBoundary, {f.begin(), f.end()},
          "boundary face " + tri_name(f) + " belongs to no tet");
    }
  }

  // Divergence theorem with the field (0, 0, z): the enclosed volume is the
  // integral of the upper section minus that of the lower one.
  Rat vol6 = 0;
  for (const Tet& t : tets) {
    Rat d = orient3d_det(A.lifted(t[0]), A.lifted(t[1]), A.lifted(t[2]), A.lifted(t[3]));
    vol6 += abs(d);
  }
  Rat enclosed6 = section_integral6(A, X.upper) - section_integral6(A, X.lower);
  if (vol6 != enclosed6) {
    add(Kind::VolumeMismatch, {},
        "tet volume " + to_string(Rat(vol6 / 6)) + " differs from enclosed volume " +
            to_string(Rat(enclosed6 / 6)));
  }

  if (tets.size() <= pairwise_limit) {
    std::vector<std::array<Point3, 4>> pts;
    for (const Tet& t : tets) {
      pts.push_back({A.lifted(t[0]), A.lifted(t[1]), A.lifted(t[2]), A.lifted(t[3])});
    }
    for (std::size_t i = 0; i < tets.size(); ++i) {
      for (std::size_t j = i + 1; j < tets.size(); ++j) {
        if (!interiors_disjoint(pts[i], pts[j])) {
          std::vector<Label> s(tets[i].begin(), tets[i].end());
          s.insert(s.end(), tets[j].begin(), tets[j].end());
          add(Kind::Overlap, s, to_string(tets[i]) + " and " + to_string(tets[j]) + " overlap");
        }
      }
    }
  }
  return rep;
}

std::optional<Flip> removable_flip(const Tet& t, const Triangulation& T, const LiftedPointSet& A) {
  // Split the corners by whether the face opposite them is exposed in T.
  std::vector<Label> opp_exposed, opp_hidden;
  for (int i = 0; i < 4; ++i) {
    std::array<Label, 3> f;
    for (int j = 0, k = 0; j < 4; ++j) {
      if (j != i) f[k++] = t[j];
    }
    (T.has_triangle(f[0], f[1], f[2]) ? opp_exposed : opp_hidden).push_back(t[i]);
  }
  auto accept = [&](Flip f) -> std::optional<Flip> {
    try {
      f.direction = flip_direction(A, f, T);
    } catch (const Error&) {
      return std::nullopt;
    }
    return canonical(f);
  };
  const auto& h = opp_hidden;
  const auto& e = opp_exposed;
  switch (e.size()) {
    case 1:
      return accept({FlipKind::Flip13, {h[0], h[1], h[2], e[0]}, Direction::Up});
    case 2:
      // Exposed faces abc and abd meet along ab, the edge opposite the hidden faces.
      return accept({FlipKind::Flip22, {h[0], h[1], e[0], e[1]}, Direction::Up});
    case 3:
      return accept({FlipKind::Flip31, {e[0], e[1], e[2], h[0]}, Direction::Up});
    default:
      return std::nullopt;
  }
}

TetToSeqResult tetrahedralization_to_sequence(const Tetrahedralization& X, const LiftedPointSet& A,
                                              Side start) {
  Triangulation T = start == Side::Lower ? X.lower : X.upper;
  const Triangulation& far = start == Side::Lower ? X.upper : X.lower;
  const Direction dir = start == Side::Lower ? Direction::Up : Direction::Down;
  std::vector<Tet> remaining = X.tets;
  for (Tet& t : remaining) std::sort(t.begin(), t.end());
  std::sort(remaining.begin(), remaining.end());
  FlipSequence seq{T.key(), {}};
  bool progress = true;
  while (progress && !remaining.empty()) {
    progress = false;
    for (auto it = remaining.begin(); it != remaining.end(); ++it) {
      auto f = removable_flip(*it, T, A);
      if (!f || f->direction != dir) continue;
      T = apply_flip(T, *f, A);
      seq.flips.push_back(*f);
      remaining.erase(it);
      progress = true;
      break;
    }
  }
  bool done = remaining.empty() && T == far;
  return {std::move(seq), done ? TetToSeqStatus::Completed : TetToSeqStatus::Stuck,
          std::move(remaining), std::move(T)};
}

Direction3::Direction3(Rat x, Rat y, Rat z) : v_{std::move(x), std::move(y), std::move(z)} {
  if (v_[0] == 0 && v_[1] == 0 && v_[2] == 0) {
    throw Error(ErrorCode::DegenerateDirection, "direction is the zero vector");
  }
}

std::string Direction3::str() const {
  return to_string(v_[0]) + "," + to_string(v_[1]) + "," + to_string(v_[2]);
}

Projection::Projection(const Direction3& d) : d_(d) {
  k_ = d[2] != 0 ? 2 : (d[1] != 0 ? 1 : 0);
  i_ = (k_ + 1) % 3;
  j_ = (k_ + 2) % 3;
}

namespace {
const Rat& coord(const Point3& p, int i) { return i == 0 ? p.x : (i == 1 ? p.y : p.z); }
}  // namespace

Point2 Projection::plane(const Point3& p) const {
  const Rat& pk = coord(p, k_);
  Rat u = coord(p, i_) - d_[i_] / d_[k_] * pk;
  Rat v = coord(p, j_) - d_[j_] / d_[k_] * pk;
  return {u, v};
}

Rat Projection::depth(const Point3& p) const {
  Rat r = p.x * d_[0] + p.y * d_[1] + p.z * d_[2];
  return r;
}

namespace {

std::vector<Point2> convex_polygon(std::vector<Point2> pts) {
  std::sort(pts.begin(), pts.end(), [](const Point2& a, const Point2& b) {
    return a.x != b.x ? a.x < b.x : a.y < b.y;
  });
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  if (pts.size() < 3) return pts;
  std::vector<Point2> h(2 * pts.size());
  std::size_t k = 0;
  for (const Point2& p : pts) {
    while (k >= 2 && orient2d(h[k - 2], h[k - 1], p) != Sign::Positive) --k;
    h[k++] = p;
  }
  for (std::size_t i = pts.size() - 1, t = k + 1; i-- > 0;) {
    while (k >= t && orient2d(h[k - 2], h[k - 1], pts[i]) != Sign::Positive) --k;
    h[k++] = pts[i];
  }
  h.resize(k - 1);
  return h;
}

// Sutherland-Hodgman against a convex counterclockwise clip polygon.
std::vector<Point2> clip(std::vector<Point2> subject, const std::vector<Point2>& clipper) {
  for (std::size_t i = 0; i < clipper.size() && !subject.empty(); ++i) {
    const Point2& a = clipper[i];
    const Point2& b = clipper[(i + 1) % clipper.size()];
    std::vector<Point2> out;
    for (std::size_t j = 0; j < subject.size(); ++j) {
      const Point2& cur = subject[j];
      const Point2& prev = subject[(j + subject.size() - 1) % subject.size()];
      Sign sc = orient2d(a, b, cur), sp = orient2d(a, b, prev);
      bool in_c = sc != Sign::Negative, in_p = sp != Sign::Negative;
      if (in_c != in_p && sc != Sign::Zero && sp != Sign::Zero) {
        out.push_back(crossing_point(prev, cur, a, b));
      }
      if (in_c) out.push_back(cur);
    }
    subject = std::move(out);
  }
  return subject;
}

struct DepthRange {
  Rat lo;
  Rat hi;
};

DepthRange depth_range(const Tet& t, const LiftedPointSet& A, const Projection& proj,
                       const Point2& s) {
  std::array<Point2, 4> q;
  std::array<Rat, 4> z;
  for (int i = 0; i < 4; ++i) {
    q[i] = proj.plane(A.lifted(t[i]));
    z[i] = proj.depth(A.lifted(t[i]));
  }
  std::optional<DepthRange> r;
  for (int skip = 0; skip < 4; ++skip) {
    std::array<int, 3> f;
    for (int j = 0, k = 0; j < 4; ++j) {
      if (j != skip) f[k++] = j;
    }
    if (orient2d(q[f[0]], q[f[1]], q[f[2]]) == Sign::Zero) continue;
    if (point_in_triangle(s, q[f[0]], q[f[1]], q[f[2]]).kind == Location::Kind::Outside) continue;
    Rat h = interpolate(s, q[f[0]], z[f[0]], q[f[1]], z[f[1]], q[f[2]], z[f[2]]);
    if (!r) {
      r = DepthRange{h, h};
    } else {
      if (h < r->lo) r->lo = h;
      if (h > r->hi) r->hi = h;
    }
  }
  return *r;
}

}  // namespace

std::optional<DepthOrder> infront_behind(const Tet& t1, const Tet& t2, const LiftedPointSet& A,
                                         const Direction3& d) {
  Projection proj(d);
  auto shadow = [&](const Tet& t) {
    std::vector<Point2> pts;
    for (Label v : t) pts.push_back(proj.plane(A.lifted(v)));
    return convex_polygon(std::move(pts));
  };
  auto p1 = shadow(t1), p2 = shadow(t2);
  if (p1.size() < 3 || p2.size() < 3) {
    throw Error(ErrorCode::DegenerateDirection, "a tetrahedron projects to zero area");
  }
  auto overlap = clip(p1, p2);
  if (overlap.size() < 3) return std::nullopt;
  Rat area = 0;
  for (std::size_t i = 2; i < overlap.size(); ++i) area += orient2d_det(overlap[0], overlap[i - 1], overlap[i]);
  if (area == 0) return std::nullopt;
  Point2 s{0, 0};
  for (const Point2& p : overlap) {
    s.x += p.x;
    s.y += p.y;
  }
  s.x /= static_cast<long>(overlap.size());
  s.y /= static_cast<long>(overlap.size());
  DepthRange r1 = depth_range(t1, A, proj, s), r2 = depth_range(t2, A, proj, s);
  if (r1.hi <= r2.lo) return DepthOrder::FirstBeforeSecond;
  if (r2.hi <= r1.lo) return DepthOrder::SecondBeforeFirst;
  throw Error(ErrorCode::DegenerateInput, to_string(t1) + " and " + to_string(t2) + " intersect");
}

AcyclicityResult acyclicity_check(const std::vector<Tet>& tets, const LiftedPointSet& A,
                                  const Direction3& d) {
  const std::size_t m = tets.size();
  std::vector<std::vector<std::size_t>> next(m);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = i + 1; j < m; ++j) {
      auto o = infront_behind(tets[i], tets[j], A, d);
      if (!o) continue;
      if (*o == DepthOrder::FirstBeforeSecond) {
        next[i].push_back(j);
      } else {
        next[j].push_back(i);
      }
    }
  }
  AcyclicityResult best;
  std::size_t best_len = m + 1;
  for (std::size_t s = 0; s < m; ++s) {
    std::vector<std::size_t> parent(m, m), dist(m, m + 1);
    std::deque<std::size_t> queue{s};
    dist[s] = 0;
    std::optional<std::size_t> closing;
    while (!queue.empty() && !closing) {
      std::size_t u = queue.front();
      queue.pop_front();
      for (std::size_t w : next[u]) {
        if (w == s) {
          closing = u;
          break;
        }
        if (dist[w] > m) {
          dist[w] = dist[u] + 1;
          parent[w] = u;
          queue.push_back(w);
        }
      }
    }
    if (!closing || dist[*closing] + 1 >= best_len) continue;
    best_len = dist[*closing] + 1;
    std::vector<Tet> cyc;
    for (std::size_t v = *closing; v != s; v = parent[v]) cyc.push_back(tets[v]);
    cyc.push_back(tets[s]);
    std::reverse(cyc.begin(), cyc.end());
    best.acyclic = false;
    best.cycle = std::move(cyc);
  }
  return best;
}

AcyclicityResult acyclicity_check(const Tetrahedralization& X, const LiftedPointSet& A,
                                  const Direction3& d) {
  return acyclicity_check(X.tets, A, d);
}

Reprojection reproject_along_direction(const Tetrahedralization& X, const LiftedPointSet& A,
                                       const Direction3& d) {
  Projection proj(d);
  std::vector<Point2> pts;
  std::vector<Rat> hs;
  for (Label v = 0; v < A.size(); ++v) {
    pts.push_back(proj.plane(A.lifted(v)));
    hs.push_back(proj.depth(A.lifted(v)));
  }
  for (std::size_t i = 0; i < pts.size(); ++i) {
    for (std::size_t j = i + 1; j < pts.size(); ++j) {
      if (pts[i] == pts[j]) {
        throw Error(ErrorCode::ProjectionCollision, "points " + std::to_string(i) + " and " +
                                                        std::to_string(j) + " project together");
      }
    }
  }
  LiftedPointSet B(std::move(pts), std::move(hs));
  std::map<std::array<Label, 3>, std::vector<Label>> apex;
  for (Tet t : X.tets) {
    std::sort(t.begin(), t.end());
    for (int i = 0; i < 4; ++i) {
      std::array<Label, 3> f;
      for (int j = 0, k = 0; j < 4; ++j) {
        if (j != i) f[k++] = t[j];
      }
      apex[f].push_back(t[i]);
    }
  }
  std::vector<std::array<Label, 3>> front, back;
  for (const auto& [f, qs] : apex) {
    if (qs.size() != 1) continue;
    if (B.orient2d(f[0], f[1], f[2]) == Sign::Zero) {
      throw Error(ErrorCode::NonTriangulatedSilhouette, "a boundary face projects to a segment");
    }
    (B.orient3d_lifted(f[0], f[1], f[2], qs[0]) == Sign::Positive ? front : back).push_back(f);
  }
  auto build = [&](std::vector<std::array<Label, 3>> tris, const char* which) {
    if (!validate_triangulation(tris, B).ok()) {
      throw Error(ErrorCode::NonTriangulatedSilhouette,
                  std::string("the ") + which + " boundary does not project to a triangulation");
    }
    return Triangulation(B, std::move(tris));
  };
  Triangulation f = build(front, "front");
  Triangulation b = build(back, "back");
  Tetrahedralization Y{X.tets, f, b};
  return {std::move(B), f, b, std::move(Y)};
}

std::optional<Direction3> find_acyclic_direction(const Tetrahedralization& X, const LiftedPointSet& A,
                                                 std::uint64_t seed, int attempts) {
  std::mt19937_64 rng(seed);
  auto component = [&]() { return Rat(static_cast<long>(rng() % 17) - 8); };
  for (int i = 0; i < attempts; ++i) {
    Rat x = component(), y = component(), z = component();
    if (x == 0 && y == 0 && z == 0) continue;
    Direction3 d(x, y, z);
    try {
      if (acyclicity_check(X, A, d).acyclic) return d;
    } catch (const Error&) {
      continue;
    }
  }
  return std::nullopt;
}

}  // namespace flipforge
