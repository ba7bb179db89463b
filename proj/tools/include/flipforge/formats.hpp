#pragma once

#include <iosfwd>
#include <map>
#include <optional>
#include <string>

#include "flipforge/corpus.hpp"
#include "flipforge/flip_graph.hpp"
#include "flipforge/lift3d.hpp"

namespace flipforge::io {

// A point set together with any named triangulations and an optional
// tetrahedralization.  Rationals travel as "p/q" strings.
struct Document {
  std::string name;
  LiftedPointSet points;
  std::map<std::string, Triangulation> triangulations;
  std::optional<Tetrahedralization> tetrahedralization;
};

Document to_document(const Dataset& d);

// Throws ParseError, or DegenerateInput for points that are not in general position.
Document parse_document(const std::string& text);
std::string write_document(const Document& doc);

struct FlipLog {
  FlipSequence sequence;
  CanonicalKey end;
};

// "# flipforge fliplog v1", "start <key>", one "<kind> a b c d <dir>" line
// per flip with the ab-cd alias as a trailing comment, then "end <key>".
FlipLog parse_fliplog(const std::string& text);
std::string write_fliplog(const FlipSequence& seq, const CanonicalKey& end);

// Inverse of canonical_key.  Throws ParseError.
Triangulation triangulation_from_key(const CanonicalKey& key, const LiftedPointSet& A);

// Replays log on A and checks start and end keys.  Throws ParseError on a mismatch.
Triangulation replay(const FlipLog& log, const LiftedPointSet& A);

// OFF surface of the tets' boundary with decimal coordinates; exact
// coordinates and the tet list ride along as "# vertex" and "# tet" comments.
std::string write_off(const Tetrahedralization& X, const LiftedPointSet& A);
struct OffContents {
  LiftedPointSet points;
  Tetrahedralization tets;
};
// Reads back the sidecar; the lower and upper sections come from the tets.
OffContents parse_off(const std::string& text);

// Lower and upper sections of a tet set: faces used once, split by which
// side of the face the owning tet lies on.  Throws ParseError if they are
// not triangulations.
Tetrahedralization with_boundary(std::vector<Tet> tets, const LiftedPointSet& A);

// Nodes are keys; sources are boxes, sinks double circles; arcs carry the flip notation.
std::string write_dot(const DirectedFlipGraph& G);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& text);

}  // namespace flipforge::io
