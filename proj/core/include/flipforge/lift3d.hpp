#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "flipforge/flips.hpp"
#include "flipforge/triangulation.hpp"

namespace flipforge {

// Sorted vertex labels of a lifted tetrahedron.
using Tet = std::array<Label, 4>;
Tet make_tet(Label a, Label b, Label c, Label d);
std::string to_string(const Tet& t);

struct Tetrahedralization {
  std::vector<Tet> tets;
  Triangulation lower;
  Triangulation upper;
};

// Value of the characteristic section of T at q.  Throws OutsideDomain.
Rat section_height(const Triangulation& T, const LiftedPointSet& A, const Point2& q);

// Does the section of T1 lie weakly below the section of T2 everywhere?
bool section_leq(const Triangulation& T1, const Triangulation& T2, const LiftedPointSet& A);

// One tet per flip.  Throws NotApplicable or NotMonotone.
Tetrahedralization sequence_to_tetrahedralization(const Triangulation& T_u, const FlipSequence& seq,
                                                  const LiftedPointSet& A);

struct TetViolation {
  enum class Kind { UnknownVertex, DegenerateTet, DuplicateTet, FaceOveruse, DanglingFace,
                    UncoveredBoundary, VolumeMismatch, Overlap };
  Kind kind;
  std::vector<Label> simplices;
  std::string message;
};

struct TetValidationReport {
  std::vector<TetViolation> violations;
  bool ok() const { return violations.empty(); }
  bool has(TetViolation::Kind k) const;
  std::string summary() const;
};

// The pairwise interior-disjointness check runs when there are at most
// pairwise_limit tets.
TetValidationReport validate_tetrahedralization(const Tetrahedralization& X, const LiftedPointSet& A,
                                                std::size_t pairwise_limit = 64);

// The flip that removes t from the current front T, if t is removable.
std::optional<Flip> removable_flip(const Tet& t, const Triangulation& T, const LiftedPointSet& A);

enum class TetToSeqStatus { Completed, Stuck };
std::string_view to_string(TetToSeqStatus s);

struct TetToSeqResult {
  FlipSequence sequence;
  TetToSeqStatus status;
  std::vector<Tet> remaining;
  Triangulation final;
};

TetToSeqResult tetrahedralization_to_sequence(const Tetrahedralization& X, const LiftedPointSet& A,
                                              Side start);

// Nonzero rational viewing direction; depth of p is dot(p', d).
class Direction3 {
 public:
  Direction3(Rat x, Rat y, Rat z);
  static Direction3 z_axis() { return {0, 0, 1}; }
  const Rat& operator[](int i) const { return v_[i]; }
  std::string str() const;

 private:
  std::array<Rat, 3> v_;
};

// Parallel projection along d: k is the last nonzero axis of d and the
// planar coordinates are p_i - d_i/d_k p_k for the two axes following k
// cyclically.  d = z leaves (x, y) unchanged.
struct Projection {
  explicit Projection(const Direction3& d);
  Point2 plane(const Point3& p) const;
  Rat depth(const Point3& p) const;

 private:
  Direction3 d_;
  int i_, j_, k_;
};

enum class DepthOrder { FirstBeforeSecond, SecondBeforeFirst };

// Depth order of interior-disjoint tets viewed from -infinity along d, or
// nullopt when their projections share no interior.
std::optional<DepthOrder> infront_behind(const Tet& t1, const Tet& t2, const LiftedPointSet& A,
                                         const Direction3& d);

struct AcyclicityResult {
  bool acyclic = true;
  // t[0] before t[1] before ... before t[0].
  std::vector<Tet> cycle;
};

AcyclicityResult acyclicity_check(const std::vector<Tet>& tets, const LiftedPointSet& A,
                                  const Direction3& d);
AcyclicityResult acyclicity_check(const Tetrahedralization& X, const LiftedPointSet& A,
                                  const Direction3& d);

struct Reprojection {
  LiftedPointSet points;
  Triangulation front;
  Triangulation back;
  Tetrahedralization tets;
};

// Re-bases X on planar coordinates orthogonal to d with heights dot(p', d).
// front is the boundary seen from -infinity along d (the new lower section).
// Throws ProjectionCollision or NonTriangulatedSilhouette; a projected set
// that is not in general position throws DegenerateInput.
Reprojection reproject_along_direction(const Tetrahedralization& X, const LiftedPointSet& A,
                                       const Direction3& d);

// Samples small random integer directions and returns the first along which X is acyclic.
std::optional<Direction3> find_acyclic_direction(const Tetrahedralization& X, const LiftedPointSet& A,
                                                 std::uint64_t seed, int attempts);

}  // namespace flipforge
