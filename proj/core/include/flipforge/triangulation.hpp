#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "flipforge/kernel.hpp"

namespace flipforge {

enum class Side { Lower, Upper };
enum class Direction { Up, Down };

std::string_view to_string(Side s);
std::string_view to_string(Direction d);
inline Direction opposite(Direction d) { return d == Direction::Up ? Direction::Down : Direction::Up; }
// A down-run heads for the lower envelope, an up-run for the upper one.
inline Side target_side(Direction d) { return d == Direction::Down ? Side::Lower : Side::Upper; }

// Planar points with a height function.  Construction rejects coincident
// points, collinear triples and lifted-coplanar quadruples.
class LiftedPointSet {
 public:
  LiftedPointSet(std::vector<Point2> coords, std::vector<Rat> heights);

  Label size() const { return static_cast<Label>(coords_.size()); }
  const Point2& point(Label v) const { return coords_[v]; }
  const Rat& height(Label v) const { return heights_[v]; }
  Point3 lifted(Label v) const { return {coords_[v].x, coords_[v].y, heights_[v]}; }
  std::span<const Point2> points() const { return coords_; }
  std::span<const Rat> heights() const { return heights_; }

  Sign orient2d(Label a, Label b, Label c) const;
  // Sign of orient3d on the lifted points a', b', c', d'.
  Sign orient3d(Label a, Label b, Label c, Label d) const;
  // d' above (Positive) or below the plane through a', b', c'.
  Sign orient3d_lifted(Label a, Label b, Label c, Label d) const;

  // Vertices of conv(A) in counterclockwise order.
  const std::vector<Label>& hull() const { return hull_; }
  bool is_hull_vertex(Label v) const { return on_hull_[v]; }
  bool is_hull_edge(Label u, Label v) const;
  // Twice the area of conv(A).
  const Rat& hull_area2() const { return hull_area2_; }

  friend bool operator==(const LiftedPointSet& a, const LiftedPointSet& b) {
    return a.coords_ == b.coords_ && a.heights_ == b.heights_;
  }

 private:
  std::vector<Point2> coords_;
  std::vector<Rat> heights_;
  std::vector<Label> hull_;
  std::vector<bool> on_hull_;
  Rat hull_area2_;
  // Sign caches, filled for small n.
  std::vector<std::int8_t> o2_;
  std::vector<std::int8_t> o3_;
};

struct Edge {
  Label u = 0;
  Label v = 0;
  Edge() = default;
  Edge(Label a, Label b) : u(a < b ? a : b), v(a < b ? b : a) {}
  friend auto operator<=>(const Edge&, const Edge&) = default;
};

// Counterclockwise, rotated so the smallest label comes first.
using Triangle = std::array<Label, 3>;

// The vertices opposite an edge uv: `left` makes (u, v, left) counterclockwise.
struct EdgeStar {
  static constexpr Label kNone = -1;
  Label left = kNone;
  Label right = kNone;
  int count() const { return (left != kNone) + (right != kNone); }
};

using CanonicalKey = std::string;

class Triangulation {
 public:
  Triangulation() = default;
  // Orients and sorts the triangles.  Throws DegenerateInput for a
  // collinear or repeated-vertex triple or an unknown label; structural
  // validity is checked separately by validate_triangulation.
  Triangulation(const LiftedPointSet& A, std::vector<std::array<Label, 3>> triangles);

  const std::vector<Triangle>& triangles() const { return tris_; }
  std::size_t size() const { return tris_.size(); }
  const std::vector<Label>& vertices() const { return verts_; }
  bool has_vertex(Label v) const;
  bool has_triangle(Label a, Label b, Label c) const;
  bool has_edge(Edge e) const { return star(e) != nullptr; }
  // nullptr if e is not an edge.
  const EdgeStar* star(Edge e) const;
  std::vector<Edge> edges() const;
  const CanonicalKey& key() const { return key_; }

  friend bool operator==(const Triangulation& a, const Triangulation& b) { return a.tris_ == b.tris_; }

 private:
  std::vector<Triangle> tris_;
  std::vector<std::pair<Edge, EdgeStar>> edges_;
  std::vector<Label> verts_;
  CanonicalKey key_;
};

Triangle normalize_triangle(const LiftedPointSet& A, Label a, Label b, Label c);
std::array<Label, 3> sorted_triple(Label a, Label b, Label c);
// "a,b,c;d,e,f;..." over sorted triples in lexicographic order.
CanonicalKey canonical_key(const Triangulation& T);

struct TriangulationViolation {
  enum class Kind { UnknownVertex, DegenerateTriangle, DuplicateTriangle, EdgeOveruse, OpenEdge,
                    Overlap, AreaMismatch };
  Kind kind;
  std::vector<Label> simplices;
  std::string message;
};

struct ValidationReport {
  std::vector<TriangulationViolation> violations;
  bool ok() const { return violations.empty(); }
  std::string summary() const;
};

ValidationReport validate_triangulation(const std::vector<std::array<Label, 3>>& triangles,
                                        const LiftedPointSet& A);
ValidationReport validate_triangulation(const Triangulation& T, const LiftedPointSet& A);

// Projection of the lower (regular) or upper (farthest-point regular)
// envelope of conv(A^w), from an exact 3D hull.
Triangulation extreme_triangulation(const LiftedPointSet& A, Side side);

enum class EdgeClass { Hull, LocallyRegular, LocallyNonRegular };
std::string_view to_string(EdgeClass c);

EdgeClass classify_edge(const Triangulation& T, Edge e, const LiftedPointSet& A, Direction dir);

struct Flippability {
  enum class Kind { Flip22, Flip31, Unflippable };
  Kind kind;
  // Flip31: the reflex vertex that would be removed.  Unflippable: the
  // blocking vertex.  Unused for Flip22.
  Label vertex = EdgeStar::kNone;
};

Flippability classify_flippability(const Triangulation& T, Edge e, const LiftedPointSet& A);

enum class VertexClass { HullVertex, LowerInterior, UpperInterior, NeitherEnvelopeInterior };
std::string_view to_string(VertexClass c);

std::vector<VertexClass> classify_vertices(const LiftedPointSet& A);

// Index of a triangle of T containing q (closed), or nullopt.
std::optional<std::size_t> locate(const Triangulation& T, const LiftedPointSet& A, const Point2& q);

}  // namespace flipforge
