#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include "flipforge/feasibility.hpp"
#include "flipforge/flips.hpp"
#include "flipforge/lift3d.hpp"
#include "flipforge/triangulation.hpp"

namespace flipforge {

inline constexpr std::size_t kDefaultMaxNodes = 1000000;

// Every triangulation of A (vertex-omitting ones included), sorted by key.
// Throws BudgetExceeded instead of truncating.
std::vector<Triangulation> enumerate_triangulations(const LiftedPointSet& A,
                                                    std::size_t max_nodes = kDefaultMaxNodes);

struct FlipArc {
  std::size_t from;
  std::size_t to;
  Flip flip;
};

class DirectedFlipGraph {
 public:
  DirectedFlipGraph(Direction dir, std::vector<Triangulation> nodes, std::vector<FlipArc> arcs);

  Direction direction() const { return dir_; }
  const std::vector<Triangulation>& nodes() const { return nodes_; }
  std::size_t size() const { return nodes_.size(); }
  const Triangulation& node(std::size_t i) const { return nodes_[i]; }
  std::optional<std::size_t> find(const CanonicalKey& key) const;
  const std::vector<FlipArc>& arcs() const { return arcs_; }
  // Indices into arcs(), in flip order.
  const std::vector<std::size_t>& out_arcs(std::size_t i) const { return out_[i]; }
  const std::vector<std::size_t>& in_arcs(std::size_t i) const { return in_[i]; }
  std::vector<std::size_t> sources() const;
  std::vector<std::size_t> sinks() const;
  // Nodes from which `to` can be reached (including `to`).
  std::vector<char> can_reach(std::size_t to) const;
  bool has_path(std::size_t from, std::size_t to) const { return can_reach(to)[from] != 0; }

 private:
  Direction dir_;
  std::vector<Triangulation> nodes_;
  std::map<CanonicalKey, std::size_t> index_;
  std::vector<FlipArc> arcs_;
  std::vector<std::vector<std::size_t>> out_, in_;
};

DirectedFlipGraph build_directed_flip_graph(const LiftedPointSet& A, Direction dir,
                                            std::size_t max_nodes = kDefaultMaxNodes);

enum class NodeClass { LowerExtreme, UpperExtreme, UpperNonExtreme, LowerNonExtreme, Internal };
std::string_view to_string(NodeClass c);

// UpperNonExtreme: no up-flip leaves the node, yet it is not the upper
// extreme; LowerNonExtreme likewise for down-flips.  The answer does not
// depend on the graph's direction.
std::map<CanonicalKey, NodeClass> classify_nodes(const DirectedFlipGraph& G, const LiftedPointSet& A);

struct RegularityResult {
  bool regular = false;
  // Heights in general position under which T is the regular triangulation.
  std::vector<Rat> witness;
};

// Height-function constraints (rows >= 1) under which T is the lower
// envelope, in all n labels.
std::vector<LinearConstraint> regularity_constraints(const Triangulation& T, const LiftedPointSet& A);

RegularityResult is_regular(const Triangulation& T, const LiftedPointSet& A);

// Lazily yields every directed path between the two extreme nodes: lower to
// upper in an Up graph, upper to lower in a Down graph.  Throws NoExtremePair.
class MaximalPathIterator {
 public:
  MaximalPathIterator(const DirectedFlipGraph& G, const LiftedPointSet& A);
  std::optional<FlipSequence> next();
  std::size_t start() const { return start_; }
  std::size_t goal() const { return goal_; }

 private:
  const DirectedFlipGraph* G_;
  std::size_t start_, goal_;
  std::vector<char> useful_;
  std::vector<std::pair<std::size_t, std::size_t>> stack_;  // node, next out-arc slot
  std::vector<std::size_t> path_;                           // arc indices
  bool started_ = false;
};

MaximalPathIterator maximal_paths(const DirectedFlipGraph& G, const LiftedPointSet& A);

struct TetrahedralizationClass {
  Tetrahedralization tets;
  std::vector<std::size_t> path_lengths;  // distinct lengths of paths producing it
  std::size_t path_count = 0;
};

std::vector<TetrahedralizationClass> distinct_tetrahedralizations(const DirectedFlipGraph& G,
                                                                  const LiftedPointSet& A);

enum class Adjacency { TwoThree, ThreeTwo };
std::string_view to_string(Adjacency a);

std::optional<Adjacency> tet_flip_adjacency(const Tetrahedralization& X1, const Tetrahedralization& X2);

}  // namespace flipforge
