#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "flipforge/triangulation.hpp"

namespace flipforge {

enum class FlipKind { Flip22, Flip13, Flip31 };
std::string_view to_string(FlipKind k);

// Support roles: Flip22 replaces edge ab by cd; Flip13 inserts d into abc;
// Flip31 removes d, leaving triangle abc.
struct Flip {
  FlipKind kind = FlipKind::Flip22;
  std::array<Label, 4> support{};
  Direction direction = Direction::Up;
  friend bool operator==(const Flip&, const Flip&) = default;
};

// Same flip with role-equivalent labels sorted (ab and cd for 2-2, abc otherwise).
Flip canonical(Flip f);
Flip inverse(const Flip& f);
// The support as a sorted tetrahedron.
std::array<Label, 4> support_tet(const Flip& f);
// "ab-cd", "abc-d" (3-1) or "d-abc" (1-3); labels are dot-separated once any exceeds 9.
std::string notation(const Flip& f);
// Lowest-support-labels-first ordering used for every deterministic choice.
bool flip_order_less(const Flip& x, const Flip& y);

std::vector<std::array<Label, 3>> removed_triangles(const Flip& f);
std::vector<std::array<Label, 3>> added_triangles(const Flip& f);

struct FlipSequence {
  CanonicalKey start;
  std::vector<Flip> flips;
  bool monotone() const;
};

// Throws NotApplicable (with a reason) when f cannot be applied to T.
void check_applicable(const Triangulation& T, const Flip& f, const LiftedPointSet& A);

// Ignores f.direction.  Down iff the support tetrahedron's upper faces are in T.
Direction flip_direction(const LiftedPointSet& A, const Flip& f, const Triangulation& T_before);

// f.direction is not consulted.
Triangulation apply_flip(const Triangulation& T, const Flip& f, const LiftedPointSet& A);

// The flip on interior edge e, if it is flippable, with its direction set.
std::optional<Flip> flip_on_edge(const Triangulation& T, Edge e, const LiftedPointSet& A);
// Inserting absent vertex p, with its direction set.
std::optional<Flip> insertion_flip(const Triangulation& T, Label p, const LiftedPointSet& A);

std::vector<Flip> enumerate_directed_flips(const Triangulation& T, const LiftedPointSet& A,
                                           Direction dir);
// Every applicable flip regardless of direction.
std::vector<Flip> enumerate_all_flips(const Triangulation& T, const LiftedPointSet& A);

struct FlipPolicy {
  enum class Kind { Stack, FirstApplicable, Indexed, SeededRandom };
  Kind kind = Kind::Stack;
  std::vector<std::size_t> indices;
  std::uint64_t seed = 0;

  static FlipPolicy stack() { return {}; }
  static FlipPolicy first_applicable() { return {Kind::FirstApplicable, {}, 0}; }
  // Step i takes candidate indices[i]; past the end it behaves like first_applicable.
  static FlipPolicy indexed(std::vector<std::size_t> idx) { return {Kind::Indexed, std::move(idx), 0}; }
  static FlipPolicy seeded_random(std::uint64_t s) { return {Kind::SeededRandom, {}, s}; }
};

// Candidate list the non-stack policies choose from: edge flips first, then
// insertions, each group in flip order.
std::vector<Flip> policy_candidates(const Triangulation& T, const LiftedPointSet& A, Direction dir);

enum class LawsonStatus { ReachedExtreme, StuckNonExtreme };
std::string_view to_string(LawsonStatus s);

struct LawsonResult {
  Triangulation final;
  FlipSequence sequence;
  LawsonStatus status;
};

LawsonResult lawson_directed(const Triangulation& T0, const LiftedPointSet& A, Direction dir,
                             const FlipPolicy& policy = FlipPolicy::stack());

struct BlockingArc {
  Label from;
  Label to;  // the blocking vertex
};

struct StuckCertificate {
  std::vector<Label> redundant_vertices;
  std::vector<std::vector<Label>> vertex_cycles;
  std::vector<std::vector<Edge>> edge_cycles;
  std::vector<BlockingArc> arcs;
};

// Throws NotStuck unless T has no dir-flips and is not the dir-extreme triangulation.
StuckCertificate stuck_certificate(const Triangulation& T, const LiftedPointSet& A, Direction dir);

}  // namespace flipforge
