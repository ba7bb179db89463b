#include "flipforge/triangulation.hpp"

#include <algorithm>
#include <map>
#include <sstream>

#include "flipforge/error.hpp"
#include "hull3d.hpp"

namespace flipforge {

namespace {

constexpr Label kCacheLimit = 40;

std::int8_t as_int(Sign s) { return static_cast<std::int8_t>(static_cast<int>(s)); }

// Parity of the permutation that sorts a 4-tuple; returns the sorted tuple.
int sort_with_parity(std::array<Label, 4>& v) {
  int parity = 1;
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j + 1 < 4 - i; ++j) {
      if (v[j] > v[j + 1]) {
        std::swap(v[j], v[j + 1]);
        parity = -parity;
      }
    }
  }
  return parity;
}

std::vector<Label> planar_hull(std::span<const Point2> pts) {
  std::vector<Label> idx(pts.size());
  for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = static_cast<Label>(i);
  std::sort(idx.begin(), idx.end(), [&](Label a, Label b) {
    if (pts[a].x != pts[b].x) return pts[a].x < pts[b].x;
    return pts[a].y < pts[b].y;
  });
  std::vector<Label> h(2 * idx.size());
  std::size_t k = 0;
  for (Label p : idx) {
    while (k >= 2 && orient2d(pts[h[k - 2]], pts[h[k - 1]], pts[p]) != Sign::Positive) --k;
    h[k++] = p;
  }
  for (std::size_t i = idx.size() - 1, t = k + 1; i-- > 0;) {
    Label p = idx[i];
    while (k >= t && orient2d(pts[h[k - 2]], pts[h[k - 1]], pts[p]) != Sign::Positive) --k;
    h[k++] = p;
  }
  h.resize(k - 1);
  return h;
}

}  // namespace

std::string_view to_string(Side s) { return s == Side::Lower ? "lower" : "upper"; }
std::string_view to_string(Direction d) { return d == Direction::Up ? "up" : "down"; }

LiftedPointSet::LiftedPointSet(std::vector<Point2> coords, std::vector<Rat> heights)
    : coords_(std::move(coords)), heights_(std::move(heights)) {
  if (coords_.size() != heights_.size()) {
    throw Error(ErrorCode::DegenerateInput, "point and height counts differ");
  }
  if (coords_.size() < 3) throw Error(ErrorCode::DegenerateInput, "need at least 3 points");
  const Label n = size();
  auto fail = [](const std::string& what) { throw Error(ErrorCode::DegenerateInput, what); };
  if (n > kCacheLimit) {
    auto rep = check_general_position(coords_, heights_);
    if (!rep.generic()) fail("point set is not in general position");
  } else {
    o2_.assign(static_cast<std::size_t>(n) * n * n, 0);
    o3_.assign(static_cast<std::size_t>(n) * n * n * n, 0);
    for (Label i = 0; i < n; ++i) {
      for (Label j = i + 1; j < n; ++j) {
        if (coords_[i] == coords_[j]) {
          fail("points " + std::to_string(i) + " and " + std::to_string(j) + " coincide");
        }
      }
    }
    for (Label a = 0; a < n; ++a) {
      for (Label b = 0; b < n; ++b) {
        for (Label c = 0; c < n; ++c) {
          if (a == b || b == c || a == c) continue;
          Sign s = flipforge::orient2d(coords_[a], coords_[b], coords_[c]);
          if (s == Sign::Zero) {
            fail("points " + std::to_string(a) + ", " + std::to_string(b) + ", " +
                 std::to_string(c) + " are collinear");
          }
          o2_[(static_cast<std::size_t>(a) * n + b) * n + c] = as_int(s);
        }
      }
    }
    for (Label a = 0; a < n; ++a) {
      for (Label b = a + 1; b < n; ++b) {
        for (Label c = b + 1; c < n; ++c) {
          for (Label d = c + 1; d < n; ++d) {
            Sign s = flipforge::orient3d(lifted(a), lifted(b), lifted(c), lifted(d));
            if (s == Sign::Zero) {
              fail("lifted points " + std::to_string(a) + ", " + std::to_string(b) + ", " +
                   std::to_string(c) + ", " + std::to_string(d) + " are coplanar");
            }
            std::array<Label, 4> p = {a, b, c, d};
            std::sort(p.begin(), p.end());
            do {
              std::array<Label, 4> q = p;
              int parity = sort_with_parity(q);
              o3_[((static_cast<std::size_t>(p[0]) * n + p[1]) * n + p[2]) * n + p[3]] =
                  static_cast<std::int8_t>(parity * static_cast<int>(s));
            } while (std::next_permutation(p.begin(), p.end()));
          }
        }
      }
    }
  }
  hull_ = planar_hull(coords_);
  on_hull_.assign(n, false);
  for (Label v : hull_) on_hull_[v] = true;
  hull_area2_ = 0;
  for (std::size_t i = 2; i < hull_.size(); ++i) {
    hull_area2_ += orient2d_det(coords_[hull_[0]], coords_[hull_[i - 1]], coords_[hull_[i]]);
  }
}

Sign LiftedPointSet::orient2d(Label a, Label b, Label c) const {
  if (!o2_.empty() && a != b && b != c && a != c) {
    const std::size_t n = coords_.size();
    return static_cast<Sign>(o2_[(a * n + b) * n + c]);
  }
  return flipforge::orient2d(coords_[a], coords_[b], coords_[c]);
}

Sign LiftedPointSet::orient3d(Label a, Label b, Label c, Label d) const {
  if (!o3_.empty() && a != b && a != c && a != d && b != c && b != d && c != d) {
    const std::size_t n = coords_.size();
    return static_cast<Sign>(o3_[((a * n + b) * n + c) * n + d]);
  }
  return flipforge::orient3d(lifted(a), lifted(b), lifted(c), lifted(d));
}

Sign LiftedPointSet::orient3d_lifted(Label a, Label b, Label c, Label d) const {
  Sign base = orient2d(a, b, c);
  if (base == Sign::Zero) throw Error(ErrorCode::DegenerateBase, "orient3d_lifted: collinear base");
  return orient3d(a, b, c, d) * base;
}

bool LiftedPointSet::is_hull_edge(Label u, Label v) const {
  const std::size_t h = hull_.size();
  for (std::size_t i = 0; i < h; ++i) {
    Label a = hull_[i], b = hull_[(i + 1) % h];
    if ((a == u && b == v) || (a == v && b == u)) return true;
  }
  return false;
}

std::array<Label, 3> sorted_triple(Label a, Label b, Label c) {
  std::array<Label, 3> t = {a, b, c};
  std::sort(t.begin(), t.end());
  return t;
}

Triangle normalize_triangle(const LiftedPointSet& A, Label a, Label b, Label c) {
  if (A.orient2d(a, b, c) == Sign::Negative) std::swap(b, c);
  if (b < a && b < c) return {b, c, a};
  if (c < a && c < b) return {c, a, b};
  return {a, b, c};
}

Triangulation::Triangulation(const LiftedPointSet& A, std::vector<std::array<Label, 3>> triangles) {
  tris_.reserve(triangles.size());
  for (const auto& t : triangles) {
    for (Label v : t) {
      if (v < 0 || v >= A.size()) {
        throw Error(ErrorCode::DegenerateInput, "triangle uses unknown label " + std::to_string(v));
      }
    }
    if (t[0] == t[1] || t[1] == t[2] || t[0] == t[2] || A.orient2d(t[0], t[1], t[2]) == Sign::Zero) {
      throw Error(ErrorCode::DegenerateInput, "degenerate triangle");
    }
    tris_.push_back(normalize_triangle(A, t[0], t[1], t[2]));
  }
  std::sort(tris_.begin(), tris_.end());
  if (std::adjacent_find(tris_.begin(), tris_.end()) != tris_.end()) {
    throw Error(ErrorCode::DegenerateInput, "repeated triangle");
  }
  edges_.reserve(tris_.size() * 3);
  for (const Triangle& t : tris_) {
    for (int i = 0; i < 3; ++i) {
      Label a = t[i], b = t[(i + 1) % 3], c = t[(i + 2) % 3];
      edges_.push_back({Edge(a, b), EdgeStar{}});
      // Triangle abc is ccw, so c is left of a->b.
      if (a < b) {
        edges_.back().second.left = c;
      } else {
        edges_.back().second.right = c;
      }
    }
  }
  std::sort(edges_.begin(), edges_.end(),
            [](const auto& x, const auto& y) { return x.first < y.first; });
  std::vector<std::pair<Edge, EdgeStar>> merged;
  for (const auto& [e, s] : edges_) {
    if (!merged.empty() && merged.back().first == e) {
      EdgeStar& m = merged.back().second;
      if ((s.left != EdgeStar::kNone && m.left != EdgeStar::kNone) ||
          (s.right != EdgeStar::kNone && m.right != EdgeStar::kNone)) {
        throw Error(ErrorCode::DegenerateInput, "edge " + std::to_string(e.u) + "-" +
                                                    std::to_string(e.v) +
                                                    " has two triangles on one side");
      }
      if (s.left != EdgeStar::kNone) m.left = s.left;
      if (s.right != EdgeStar::kNone) m.right = s.right;
    } else {
      merged.push_back({e, s});
    }
  }
  edges_ = std::move(merged);
  for (const Triangle& t : tris_) verts_.insert(verts_.end(), t.begin(), t.end());
  std::sort(verts_.begin(), verts_.end());
  verts_.erase(std::unique(verts_.begin(), verts_.end()), verts_.end());
  key_ = canonical_key(*this);
}

bool Triangulation::has_vertex(Label v) const {
  return std::binary_search(verts_.begin(), verts_.end(), v);
}

bool Triangulation::has_triangle(Label a, Label b, Label c) const {
  auto s = sorted_triple(a, b, c);
  // Stored ccw with the smallest label first; either remaining order is possible.
  Triangle t1 = {s[0], s[1], s[2]}, t2 = {s[0], s[2], s[1]};
  return std::binary_search(tris_.begin(), tris_.end(), t1) ||
         std::binary_search(tris_.begin(), tris_.end(), t2);
}

const EdgeStar* Triangulation::star(Edge e) const {
  auto it = std::lower_bound(edges_.begin(), edges_.end(), e,
                             [](const auto& x, const Edge& k) { return x.first < k; });
  if (it == edges_.end() || it->first != e) return nullptr;
  return &it->second;
}

std::vector<Edge> Triangulation::edges() const {
  std::vector<Edge> out;
  out.reserve(edges_.size());
  for (const auto& [e, s] : edges_) out.push_back(e);
  return out;
}

CanonicalKey canonical_key(const Triangulation& T) {
  std::vector<std::array<Label, 3>> s;
  s.reserve(T.size());
  for (const Triangle& t : T.triangles()) s.push_back(sorted_triple(t[0], t[1], t[2]));
  std::sort(s.begin(), s.end());
  std::string key;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (i) key += ';';
    key += std::to_string(s[i][0]) + ',' + std::to_string(s[i][1]) + ',' + std::to_string(s[i][2]);
  }
  return key;
}

std::string ValidationReport::summary() const {
  std::ostringstream os;
  for (const auto& v : violations) os << v.message << '\n';
  return os.str();
}

namespace {

// Interiors of two ccw triangles overlap iff no edge line separates them.
bool interiors_overlap(const LiftedPointSet& A, const Triangle& s, const Triangle& t) {
  auto separates = [&](const Triangle& p, const Triangle& q) {
    for (int i = 0; i < 3; ++i) {
      Label a = p[i], b = p[(i + 1) % 3];
      bool all_outside = true;
      for (Label v : q) {
        if (v == a || v == b) continue;
        if (A.orient2d(a, b, v) == Sign::Positive) {
          all_outside = false;
          break;
        }
      }
      if (all_outside) return true;
    }
    return false;
  };
  return !separates(s, t) && !separates(t, s);
}

}  // namespace

ValidationReport validate_triangulation(const std::vector<std::array<Label, 3>>& triangles,
                                        const LiftedPointSet& A) {
  using Kind = TriangulationViolation::Kind;
  ValidationReport rep;
  auto add = [&](Kind k, std::vector<Label> s, std::string msg) {
    rep.violations.push_back({k, std::move(s), std::move(msg)});
  };
  auto name = [](std::span<const Label> s) {
    std::string out;
    for (Label v : s) out += (out.empty() ? "" : " ") + std::to_string(v);
    return out;
  };
  std::vector<Triangle> good;
  for (const auto& t : triangles) {
    bool known = std::all_of(t.begin(), t.end(), [&](Label v) { return v >= 0 && v < A.size(); });
    if (!known) {
      add(Kind::UnknownVertex, {t.begin(), t.end()}, "triangle " + name(t) + " uses an unknown label");
      continue;
    }
    if (t[0] == t[1] || t[1] == t[2] || t[0] == t[2] || A.orient2d(t[0], t[1], t[2]) == Sign::Zero) {
      add(Kind::DegenerateTriangle, {t.begin(), t.end()}, "triangle " + name(t) + " is degenerate");
      continue;
    }
    good.push_back(normalize_triangle(A, t[0], t[1], t[2]));
  }
  std::sort(good.begin(), good.end());
  for (std::size_t i = 1; i < good.size(); ++i) {
    if (good[i] == good[i - 1]) {
      add(Kind::DuplicateTriangle, {good[i].begin(), good[i].end()},
          "triangle " + name(good[i]) + " appears twice");
    }
  }
  good.erase(std::unique(good.begin(), good.end()), good.end());

  // Closure / intersection: each edge side carries at most one triangle, and
  // one-sided edges must be hull edges.
  std::map<Edge, std::pair<int, int>> sides;
  for (const Triangle& t : good) {
    for (int i = 0; i < 3; ++i) {
      Label a = t[i], b = t[(i + 1) % 3];
      auto& s = sides[Edge(a, b)];
      (a < b ? s.first : s.second)++;
    }
  }
  for (const auto& [e, s] : sides) {
    std::array<Label, 2> ev = {e.u, e.v};
    if (s.first > 1 || s.second > 1) {
      add(Kind::EdgeOveruse, {e.u, e.v}, "edge " + name(ev) + " has two triangles on one side");
    } else if ((s.first == 0 || s.second == 0) && !A.is_hull_edge(e.u, e.v)) {
      add(Kind::OpenEdge, {e.u, e.v}, "interior edge " + name(ev) + " has a single triangle");
    }
  }
  if (good.size() <= 400) {
    for (std::size_t i = 0; i < good.size(); ++i) {
      for (std::size_t j = i + 1; j < good.size(); ++j) {
        if (interiors_overlap(A, good[i], good[j])) {
          std::vector<Label> s(good[i].begin(), good[i].end());
          s.insert(s.end(), good[j].begin(), good[j].end());
          add(Kind::Overlap, s, "triangles " + name(good[i]) + " and " + name(good[j]) + " overlap");
        }
      }
    }
  }
  Rat area = 0;
  for (const Triangle& t : good) {
    area += orient2d_det(A.point(t[0]), A.point(t[1]), A.point(t[2]));
  }
  if (area != A.hull_area2()) {
    add(Kind::AreaMismatch, {}, "triangle areas sum to " + to_string(Rat(area / 2)) +
                                    ", hull area is " + to_string(Rat(A.hull_area2() / 2)));
  }
  return rep;
}

ValidationReport validate_triangulation(const Triangulation& T, const LiftedPointSet& A) {
  std::vector<std::array<Label, 3>> raw(T.triangles().begin(), T.triangles().end());
  return validate_triangulation(raw, A);
}

Triangulation extreme_triangulation(const LiftedPointSet& A, Side side) {
  const Label n = A.size();
  if (n == 3) return Triangulation(A, {{0, 1, 2}});
  std::vector<Point3> pts;
  pts.reserve(n);
  for (Label v = 0; v < n; ++v) pts.push_back(A.lifted(v));
  auto facets = detail::convex_hull_3d(pts);
  std::vector<std::array<Label, 3>> tris;
  const Sign want = side == Side::Lower ? Sign::Negative : Sign::Positive;
  for (const auto& f : facets) {
    Sign s = A.orient2d(f[0], f[1], f[2]);
    if (s == want) tris.push_back(f);
  }
  return Triangulation(A, std::move(tris));
}

std::string_view to_string(EdgeClass c) {
  switch (c) {
    case EdgeClass::Hull: return "hull";
    case EdgeClass::LocallyRegular: return "locally-regular";
    case EdgeClass::LocallyNonRegular: return "locally-non-regular";
  }
  return "?";
}

EdgeClass classify_edge(const Triangulation& T, Edge e, const LiftedPointSet& A, Direction dir) {
  const EdgeStar* s = T.star(e);
  if (!s) {
    throw Error(ErrorCode::EdgeNotInTriangulation,
                "edge " + std::to_string(e.u) + "-" + std::to_string(e.v));
  }
  if (s->count() < 2) return EdgeClass::Hull;
  Sign o = A.orient3d_lifted(e.u, e.v, s->left, s->right);
  Sign bad = dir == Direction::Up ? Sign::Positive : Sign::Negative;
  return o == bad ? EdgeClass::LocallyNonRegular : EdgeClass::LocallyRegular;
}

Flippability classify_flippability(const Triangulation& T, Edge e, const LiftedPointSet& A) {
  const EdgeStar* s = T.star(e);
  if (!s) {
    throw Error(ErrorCode::EdgeNotInTriangulation,
                "edge " + std::to_string(e.u) + "-" + std::to_string(e.v));
  }
  if (s->count() < 2) {
    throw Error(ErrorCode::HullEdge, "edge " + std::to_string(e.u) + "-" + std::to_string(e.v));
  }
  Label a = e.u, b = e.v, c = s->left, d = s->right;
  Sign sa = A.orient2d(c, d, a), sb = A.orient2d(c, d, b);
  if (sa != sb) return {Flippability::Kind::Flip22, EdgeStar::kNone};
  // c and d straddle ab, so the reflex vertex is a or b: whichever lies inside
  // the triangle spanned by the other three.
  auto inside = [&](Label p, Label x, Label y, Label z) {
    return point_in_triangle(A.point(p), A.point(x), A.point(y), A.point(z)).kind ==
           Location::Kind::Inside;
  };
  Label reflex = inside(a, b, c, d) ? a : b;
  if (T.has_triangle(reflex, c, d)) return {Flippability::Kind::Flip31, reflex};
  return {Flippability::Kind::Unflippable, reflex};
}

std::string_view to_string(VertexClass c) {
  switch (c) {
    case VertexClass::HullVertex: return "hull";
    case VertexClass::LowerInterior: return "lower-interior";
    case VertexClass::UpperInterior: return "upper-interior";
    case VertexClass::NeitherEnvelopeInterior: return "neither-envelope-interior";
  }
  return "?";
}

std::vector<VertexClass> classify_vertices(const LiftedPointSet& A) {
  Triangulation lower = extreme_triangulation(A, Side::Lower);
  Triangulation upper = extreme_triangulation(A, Side::Upper);
  std::vector<VertexClass> out(A.size());
  for (Label v = 0; v < A.size(); ++v) {
    if (A.is_hull_vertex(v)) {
      out[v] = VertexClass::HullVertex;
    } else if (lower.has_vertex(v)) {
      out[v] = VertexClass::LowerInterior;
    } else if (upper.has_vertex(v)) {
      out[v] = VertexClass::UpperInterior;
    } else {
      out[v] = VertexClass::NeitherEnvelopeInterior;
    }
  }
  return out;
}

std::optional<std::size_t> locate(const Triangulation& T, const LiftedPointSet& A, const Point2& q) {
  const auto& tris = T.triangles();
  for (std::size_t i = 0; i < tris.size(); ++i) {
    const Triangle& t = tris[i];
    if (point_in_triangle(q, A.point(t[0]), A.point(t[1]), A.point(t[2])).kind !=
        Location::Kind::Outside) {
      return i;
    }
  }
  return std::nullopt;
}

}  // namespace flipforge
