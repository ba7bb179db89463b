#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "flipforge/flip_graph.hpp"
#include "flipforge/flips.hpp"
#include "flipforge/lift3d.hpp"

namespace flipforge {

// The polyhedron bounded by the lifted sections of two triangulations of A.
struct PolyhedronInput {
  LiftedPointSet A;
  Triangulation source;
  Triangulation target;
};

struct PolyhedronIssue {
  enum class Severity { Error, Warning };
  enum class Kind {
    InvalidSource, InvalidTarget, NotConvexPosition, NeitherConvexNorConcave, SectionsCross,
    SourceHasInteriorVertices, TargetNonRegular, TargetNonExtremeNode, TargetClassUnknown
  };
  Severity severity;
  Kind kind;
  std::string message;
};

struct PolyhedronReport {
  std::vector<PolyhedronIssue> issues;
  // Up when the source section lies below the target section.
  std::optional<Direction> direction;
  bool ok() const;  // no Error-severity issue
  bool has(PolyhedronIssue::Kind k) const;
  std::string summary() const;
};

struct PolyhedronCheckOptions {
  // Regularity and poset position of the target; the latter enumerates all
  // triangulations, so it is skipped past this many points.
  bool check_target = true;
  Label max_points_for_poset = 9;
  std::size_t max_nodes = kDefaultMaxNodes;
};

PolyhedronReport validate_polyhedron_input(const PolyhedronInput& P,
                                           const PolyhedronCheckOptions& opts = {});

// Does the section after f stay on the source side of the target over the support?
bool is_conforming_flip(const Flip& f, const Triangulation& current, const PolyhedronInput& P,
                        Direction dir);

// Conformity tests are bounded by kConformityConstant * n^3.
inline constexpr std::size_t kConformityConstant = 1;

struct TriangulatorStats {
  std::size_t conformity_tests = 0;
  std::size_t flips = 0;
};

struct IndecomposableCertificate {
  Triangulation stuck;
  // Locally non-regular edges missing from the target that admit no
  // conforming flip in the run's direction.
  std::vector<Edge> blocked_edges;
  // Target vertices whose insertion in the run's direction is not conforming.
  std::vector<Label> blocked_insertions;
  // Present when the stuck triangulation has no flips of that direction at all.
  std::optional<StuckCertificate> cycles;
};

struct PolyhedronOutcome {
  enum class Kind { Success, Indecomposable, InvalidInput };
  Kind kind;
  Tetrahedralization tets;
  FlipSequence sequence;
  std::optional<IndecomposableCertificate> certificate;
  PolyhedronReport report;
  TriangulatorStats stats;
};
std::string_view to_string(PolyhedronOutcome::Kind k);

struct TriangulatorOptions {
  PolyhedronCheckOptions checks{};
  // Called after every applied flip with the new current triangulation.
  std::function<void(const Triangulation&, const Flip&)> observer;
};

PolyhedronOutcome triangulate_polyhedron(const PolyhedronInput& P, const TriangulatorOptions& opts = {});

}  // namespace flipforge
