#include "flipforge/flip_graph.hpp"

#include <algorithm>
#include <deque>
#include <random>
#include <set>
#include <stdexcept>
#include <unordered_map>

#include "flipforge/error.hpp"

namespace flipforge {

std::vector<Triangulation> enumerate_triangulations(const LiftedPointSet& A, std::size_t max_nodes) {
  std::unordered_map<CanonicalKey, std::size_t> seen;
  std::vector<Triangulation> found;
  found.push_back(extreme_triangulation(A, Side::Lower));
  seen.emplace(found[0].key(), 0);
  for (std::size_t head = 0; head < found.size(); ++head) {
    for (const Flip& f : enumerate_all_flips(found[head], A)) {
      Triangulation T = apply_flip(found[head], f, A);
      if (seen.count(T.key())) continue;
      if (found.size() >= max_nodes) {
        throw Error(ErrorCode::BudgetExceeded,
                    "more than " + std::to_string(max_nodes) + " triangulations");
      }
      seen.emplace(T.key(), found.size());
      found.push_back(std::move(T));
    }
  }
  std::sort(found.begin(), found.end(),
            [](const Triangulation& a, const Triangulation& b) { return a.key() < b.key(); });
  return found;
}

DirectedFlipGraph::DirectedFlipGraph(Direction dir, std::vector<Triangulation> nodes,
                                     std::vector<FlipArc> arcs)
    : dir_(dir), nodes_(std::move(nodes)), arcs_(std::move(arcs)) {
  out_.resize(nodes_.size());
  in_.resize(nodes_.size());
  for (std::size_t i = 0; i < nodes_.size(); ++i) index_.emplace(nodes_[i].key(), i);
  for (std::size_t a = 0; a < arcs_.size(); ++a) {
    out_[arcs_[a].from].push_back(a);
    in_[arcs_[a].to].push_back(a);
  }
}

std::optional<std::size_t> DirectedFlipGraph::find(const CanonicalKey& key) const {
  auto it = index_.find(key);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::vector<std::size_t> DirectedFlipGraph::sources() const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < nodes_.size(); ++i) {
    if (in_[i].empty()) out.push_back(i);
  }
  return out;
}

std::vector<std::size_t> DirectedFlipGraph::sinks() const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < nodes_.size(); ++i) {
    if (out_[i].empty()) out.push_back(i);
  }
  return out;
}

std::vector<char> DirectedFlipGraph::can_reach(std::size_t to) const {
  std::vector<char> mark(nodes_.size(), 0);
  std::deque<std::size_t> queue{to};
  mark[to] = 1;
  while (!queue.empty()) {
    std::size_t v = queue.front();
    queue.pop_front();
    for (std::size_t a : in_[v]) {
      std::size_t u = arcs_[a].from;
      if (!mark[u]) {
        mark[u] = 1;
        queue.push_back(u);
      }
    }
  }
  return mark;
}

DirectedFlipGraph build_directed_flip_graph(const LiftedPointSet& A, Direction dir,
                                            std::size_t max_nodes) {
  auto nodes = enumerate_triangulations(A, max_nodes);
  std::unordered_map<CanonicalKey, std::size_t> index;
  for (std::size_t i = 0; i < nodes.size(); ++i) index.emplace(nodes[i].key(), i);
  std::vector<FlipArc> arcs;
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    for (const Flip& f : enumerate_directed_flips(nodes[i], A, dir)) {
      Triangulation T = apply_flip(nodes[i], f, A);
      arcs.push_back({i, index.at(T.key()), f});
    }
  }
  return DirectedFlipGraph(dir, std::move(nodes), std::move(arcs));
}

std::string_view to_string(NodeClass c) {
  switch (c) {
    case NodeClass::LowerExtreme: return "LowerExtreme";
    case NodeClass::UpperExtreme: return "UpperExtreme";
    case NodeClass::UpperNonExtreme: return "UpperNonExtreme";
    case NodeClass::LowerNonExtreme: return "LowerNonExtreme";
    case NodeClass::Internal: return "Internal";
  }
  return "?";
}

std::map<CanonicalKey, NodeClass> classify_nodes(const DirectedFlipGraph& G, const LiftedPointSet& A) {
  const CanonicalKey lower = extreme_triangulation(A, Side::Lower).key();
  const CanonicalKey upper = extreme_triangulation(A, Side::Upper).key();
  const bool up = G.direction() == Direction::Up;
  std::map<CanonicalKey, NodeClass> out;
  for (std::size_t i = 0; i < G.size(); ++i) {
    const CanonicalKey& k = G.node(i).key();
    bool no_up = (up ? G.out_arcs(i) : G.in_arcs(i)).empty();
    bool no_down = (up ? G.in_arcs(i) : G.out_arcs(i)).empty();
    NodeClass c = NodeClass::Internal;
    if (k == lower) {
      c = NodeClass::LowerExtreme;
    } else if (k == upper) {
      c = NodeClass::UpperExtreme;
    } else if (no_up) {
      c = NodeClass::UpperNonExtreme;
    } else if (no_down) {
      c = NodeClass::LowerNonExtreme;
    }
    out.emplace(k, c);
  }
  return out;
}

std::vector<LinearConstraint> regularity_constraints(const Triangulation& T, const LiftedPointSet& A) {
  const Label n = A.size();
  std::vector<LinearConstraint> rows;
  // d' strictly above plane(a', b', c'), as a linear form in the heights.
  auto above = [&](Label a, Label b, Label c, Label d) {
    auto k = lifted_det_coefficients(A.point(a), A.point(b), A.point(c), A.point(d));
    // k[3] is twice the signed area of abc.
    int s = sgn(k[3]);
    LinearConstraint row{std::vector<Rat>(n, 0), 1};
    std::array<Label, 4> who = {a, b, c, d};
    for (int i = 0; i < 4; ++i) row.coeffs[who[i]] += s > 0 ? k[i] : Rat(-k[i]);
    rows.push_back(std::move(row));
  };
  for (Edge e : T.edges()) {
    const EdgeStar* s = T.star(e);
    if (s->count() == 2) above(e.u, e.v, s->left, s->right);
  }
  for (Label p = 0; p < n; ++p) {
    if (T.has_vertex(p)) continue;
    auto idx = locate(T, A, A.point(p));
    if (!idx) throw Error(ErrorCode::OutsideDomain, "vertex outside the triangulated domain");
    const Triangle& t = T.triangles()[*idx];
    above(t[0], t[1], t[2], p);
  }
  return rows;
}

RegularityResult is_regular(const Triangulation& T, const LiftedPointSet& A) {
  const Label n = A.size();
  auto rows = regularity_constraints(T, A);
  // Adding an affine function changes nothing, so pin three hull vertices at zero.
  std::vector<char> pinned(n, 0);
  for (int i = 0; i < 3; ++i) pinned[A.hull()[i]] = 1;
  std::vector<Label> free_vars;
  for (Label v = 0; v < n; ++v) {
    if (!pinned[v]) free_vars.push_back(v);
  }
  std::vector<LinearConstraint> reduced;
  for (const auto& r : rows) {
    LinearConstraint c{{}, r.rhs};
    for (Label v : free_vars) c.coeffs.push_back(r.coeffs[v]);
    reduced.push_back(std::move(c));
  }
  auto x = simplex_feasible_point(reduced, free_vars.size());
  if (!x) return {false, {}};
  std::vector<Rat> h(n, 0);
  for (std::size_t i = 0; i < free_vars.size(); ++i) h[free_vars[i]] = (*x)[i];

  // Every row is at least 1 at h.  A small random nudge keeps each row
  // above 1/2 and makes the lift generic.
  std::mt19937_64 rng(0x5eedf00dULL);
  for (int attempt = 0; attempt < 64; ++attempt) {
    std::vector<Rat> r(n);
    for (Label v = 0; v < n; ++v) r[v] = Rat(static_cast<long>(rng() % 2001) - 1000);
    Rat worst = 0;
    for (const auto& row : rows) {
      Rat s = 0;
      for (Label v = 0; v < n; ++v) s += row.coeffs[v] * r[v];
      if (abs(s) > worst) worst = abs(s);
    }
    Rat eps = Rat(1) / (2 * (worst + 1));
    std::vector<Rat> w(n);
    for (Label v = 0; v < n; ++v) w[v] = h[v] + eps * r[v];
    try {
      LiftedPointSet B(std::vector<Point2>(A.points().begin(), A.points().end()), w);
      if (extreme_triangulation(B, Side::Lower).key() != T.key()) {
        throw std::logic_error("is_regular: witness does not reproduce the triangulation");
      }
      return {true, std::move(w)};
    } catch (const Error& e) {
      if (e.code() != ErrorCode::DegenerateInput) throw;
    }
  }
  throw std::logic_error("is_regular: could not perturb the witness into general position");
}

MaximalPathIterator::MaximalPathIterator(const DirectedFlipGraph& G, const LiftedPointSet& A) : G_(&G) {
  auto lower = G.find(extreme_triangulation(A, Side::Lower).key());
  auto upper = G.find(extreme_triangulation(A, Side::Upper).key());
  if (!lower || !upper) throw Error(ErrorCode::NoExtremePair, "an extreme triangulation is missing");
  bool up = G.direction() == Direction::Up;
  start_ = up ? *lower : *upper;
  goal_ = up ? *upper : *lower;
  useful_ = G.can_reach(goal_);
}

std::optional<FlipSequence> MaximalPathIterator::next() {
  const auto& arcs = G_->arcs();
  if (!started_) {
    started_ = true;
    if (start_ == goal_) return FlipSequence{G_->node(start_).key(), {}};
    if (!useful_[start_]) return std::nullopt;
    stack_.push_back({start_, 0});
  }
  while (!stack_.empty()) {
    std::size_t v = stack_.back().first;
    std::size_t slot = stack_.back().second;
    const auto& outs = G_->out_arcs(v);
    if (slot == outs.size()) {
      stack_.pop_back();
      if (!path_.empty()) path_.pop_back();
      continue;
    }
    ++stack_.back().second;
    std::size_t a = outs[slot];
    std::size_t w = arcs[a].to;
    if (!useful_[w]) continue;
    if (w == goal_) {
      FlipSequence seq{G_->node(start_).key(), {}};
      for (std::size_t p : path_) seq.flips.push_back(arcs[p].flip);
      seq.flips.push_back(arcs[a].flip);
      return seq;
    }
    path_.push_back(a);
    stack_.push_back({w, 0});
  }
  return std::nullopt;
}

MaximalPathIterator maximal_paths(const DirectedFlipGraph& G, const LiftedPointSet& A) {
  return MaximalPathIterator(G, A);
}

std::vector<TetrahedralizationClass> distinct_tetrahedralizations(const DirectedFlipGraph& G,
                                                                  const LiftedPointSet& A) {
  auto it = maximal_paths(G, A);
  const Triangulation& start = G.node(it.start());
  std::map<std::vector<Tet>, TetrahedralizationClass> found;
  while (auto seq = it.next()) {
    std::vector<Tet> tets;
    for (const Flip& f : seq->flips) tets.push_back(support_tet(f));
    std::sort(tets.begin(), tets.end());
    auto pos = found.find(tets);
    if (pos == found.end()) {
      TetrahedralizationClass c{sequence_to_tetrahedralization(start, *seq, A), {}, 0};
      std::sort(c.tets.tets.begin(), c.tets.tets.end());
      pos = found.emplace(tets, std::move(c)).first;
    }
    auto& lens = pos->second.path_lengths;
    if (std::find(lens.begin(), lens.end(), seq->flips.size()) == lens.end()) {
      lens.push_back(seq->flips.size());
      std::sort(lens.begin(), lens.end());
    }
    ++pos->second.path_count;
  }
  std::vector<TetrahedralizationClass> out;
  for (auto& [k, c] : found) out.push_back(std::move(c));
  return out;
}

std::string_view to_string(Adjacency a) { return a == Adjacency::TwoThree ? "2-3" : "3-2"; }

namespace {

// Two tets abcd, abce against three tets deab, debc, deca.
bool bipyramid_pair(const std::vector<Tet>& two, const std::vector<Tet>& three) {
  std::vector<Label> common;
  std::set_intersection(two[0].begin(), two[0].end(), two[1].begin(), two[1].end(),
                        std::back_inserter(common));
  if (common.size() != 3) return false;
  std::set<Label> all(two[0].begin(), two[0].end());
  all.insert(two[1].begin(), two[1].end());
  std::vector<Label> apex;
  for (Label v : all) {
    if (std::find(common.begin(), common.end(), v) == common.end()) apex.push_back(v);
  }
  std::vector<Tet> expect;
  for (int skip = 0; skip < 3; ++skip) {
    std::vector<Label> pair;
    for (int i = 0; i < 3; ++i) {
      if (i != skip) pair.push_back(common[i]);
    }
    expect.push_back(make_tet(apex[0], apex[1], pair[0], pair[1]));
  }
  std::sort(expect.begin(), expect.end());
  return expect == three;
}

}  // namespace

std::optional<Adjacency> tet_flip_adjacency(const Tetrahedralization& X1, const Tetrahedralization& X2) {
  auto sorted = [](const Tetrahedralization& X) {
    std::vector<Tet> ts;
    for (Tet t : X.tets) {
      std::sort(t.begin(), t.end());
      ts.push_back(t);
    }
    std::sort(ts.begin(), ts.end());
    return ts;
  };
  auto a = sorted(X1), b = sorted(X2);
  std::vector<Tet> only_a, only_b;
  std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(only_a));
  std::set_difference(b.begin(), b.end(), a.begin(), a.end(), std::back_inserter(only_b));
  if (only_a.size() == 2 && only_b.size() == 3 && bipyramid_pair(only_a, only_b)) {
    return Adjacency::TwoThree;
  }
  if (only_a.size() == 3 && only_b.size() == 2 && bipyramid_pair(only_b, only_a)) {
    return Adjacency::ThreeTwo;
  }
  return std::nullopt;
}

}  // namespace flipforge
