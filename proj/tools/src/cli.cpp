#include "flipforge/cli.hpp"

#include <algorithm>
#include <cstdlib>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>

#include "flipforge/error.hpp"
#include "flipforge/formats.hpp"
#include "flipforge/polyhedron.hpp"

namespace flipforge::cli {

namespace {

using io::Document;

enum Exit { kOk = 0, kFailed = 1, kInput = 2 };

[[noreturn]] void bad(const std::string& msg) { throw Error(ErrorCode::ParseError, msg); }

Document load(const std::string& path) { return io::parse_document(io::read_file(path)); }

// path#role; without a role the file must hold exactly one triangulation.
// The roles "regular" and "farthest" fall back to the extreme triangulations.
Triangulation load_triangulation(const std::string& ref, const LiftedPointSet& A) {
  auto hash = ref.rfind('#');
  std::string path = hash == std::string::npos ? ref : ref.substr(0, hash);
  std::string role = hash == std::string::npos ? "" : ref.substr(hash + 1);
  Document doc = load(path);
  if (!(doc.points == A)) bad("'" + path + "' is over a different point set");
  if (role.empty()) {
    if (doc.triangulations.size() != 1) bad("'" + path + "' needs a #role (it holds " +
                                            std::to_string(doc.triangulations.size()) + " triangulations)");
    return doc.triangulations.begin()->second;
  }
  if (auto it = doc.triangulations.find(role); it != doc.triangulations.end()) return it->second;
  if (role == "regular") return extreme_triangulation(A, Side::Lower);
  if (role == "farthest") return extreme_triangulation(A, Side::Upper);
  bad("'" + path + "' has no triangulation '" + role + "'");
}

Tetrahedralization load_tets(const std::string& path, const LiftedPointSet& A) {
  std::string text = io::read_file(path);
  if (text.rfind("OFF", 0) == 0) {
    auto off = io::parse_off(text);
    if (!(off.points == A)) bad("'" + path + "' is over a different point set");
    return off.tets;
  }
  Document doc = io::parse_document(text);
  if (!(doc.points == A)) bad("'" + path + "' is over a different point set");
  if (!doc.tetrahedralization) bad("'" + path + "' holds no tetrahedralization");
  return *doc.tetrahedralization;
}

Direction parse_dir(const std::string& s) {
  if (s == "up") return Direction::Up;
  if (s == "down") return Direction::Down;
  bad("direction must be up or down");
}

Direction3 parse_direction3(const std::string& s) {
  std::vector<Rat> v;
  std::istringstream in(s);
  std::string part;
  while (std::getline(in, part, ',')) v.push_back(parse_rat(part));
  if (v.size() != 3) bad("direction must be dx,dy,dz");
  return Direction3(v[0], v[1], v[2]);
}

std::size_t max_nodes(std::size_t flag) {
  if (flag != 0) return flag;
  if (const char* env = std::getenv("FLIPFORGE_MAX_NODES")) {
    try {
      std::size_t used = 0;
      auto v = std::stoull(env, &used);
      if (used == std::string(env).size() && v > 0) return v;
    } catch (const std::exception&) {
    }
    bad("FLIPFORGE_MAX_NODES must be a positive integer");
  }
  return kDefaultMaxNodes;
}

void print_certificate(std::ostream& out, const StuckCertificate& c) {
  out << "redundant vertices:";
  for (Label v : c.redundant_vertices) out << ' ' << v;
  out << '\n';
  for (const auto& cyc : c.edge_cycles) {
    out << "edge cycle:";
    for (Edge e : cyc) out << ' ' << e.u << '-' << e.v;
    out << '\n';
  }
}

void print_tets(std::ostream& out, const std::string& what, const std::vector<Tet>& tets) {
  out << what << ':';
  for (const Tet& t : tets) out << ' ' << to_string(t);
  out << '\n';
}

struct Options {
  std::string name, output, pts, tri, second, start, dir = "", policy = "stack", dot, off, log, direction;
  Label n = 6;
  std::uint64_t seed = 1;
  std::size_t nodes = 0;
  bool regularity = false;
};

int cmd_gen(const Options& o, std::ostream& out) {
  Dataset d = generate(o.name, o.n, o.seed);
  io::write_file(o.output, io::write_document(io::to_document(d)));
  bool all = true;
  for (const Fact& f : d.facts) {
    bool ok = f.check(d);
    all = all && ok;
    out << (ok ? "ok   " : "FAIL ") << f.name << '\n';
  }
  out << "wrote " << d.name << " (" << d.points.size() << " points) to " << o.output << '\n';
  return all ? kOk : kFailed;
}

int cmd_lawson(const Options& o, std::ostream& out) {
  Document doc = load(o.pts);
  const Direction dir = parse_dir(o.dir);
  Triangulation T0 = o.start.empty() ? extreme_triangulation(doc.points, target_side(opposite(dir)))
                                     : load_triangulation(o.start, doc.points);
  FlipPolicy policy;
  if (o.policy == "stack") {
    policy = FlipPolicy::stack();
  } else if (o.policy == "first") {
    policy = FlipPolicy::first_applicable();
  } else if (o.policy == "random") {
    policy = FlipPolicy::seeded_random(o.seed);
  } else {
    bad("policy must be stack, first or random");
  }
  auto r = lawson_directed(T0, doc.points, dir, policy);
  out << "status " << to_string(r.status) << '\n';
  out << "flips " << r.sequence.flips.size() << '\n';
  out << "final " << r.final.key() << '\n';
  if (!o.log.empty()) io::write_file(o.log, io::write_fliplog(r.sequence, r.final.key()));
  if (r.status == LawsonStatus::StuckNonExtreme) {
    print_certificate(out, stuck_certificate(r.final, doc.points, dir));
    return kFailed;
  }
  return kOk;
}

int cmd_poset(const Options& o, std::ostream& out) {
  Document doc = load(o.pts);
  auto G = build_directed_flip_graph(doc.points, parse_dir(o.dir), max_nodes(o.nodes));
  out << "direction " << to_string(G.direction()) << '\n';
  out << "nodes " << G.size() << '\n';
  out << "arcs " << G.arcs().size() << '\n';
  for (auto i : G.sources()) out << "source " << G.node(i).key() << '\n';
  for (auto i : G.sinks()) out << "sink " << G.node(i).key() << '\n';
  std::map<NodeClass, std::size_t> counts;
  for (const auto& [key, c] : classify_nodes(G, doc.points)) ++counts[c];
  for (const auto& [c, k] : counts) out << "class " << to_string(c) << ' ' << k << '\n';
  if (o.regularity) {
    for (const auto& T : G.nodes()) {
      if (!is_regular(T, doc.points).regular) out << "non-regular " << T.key() << '\n';
    }
  }
  if (!o.dot.empty()) io::write_file(o.dot, io::write_dot(G));
  return kOk;
}

int cmd_seq2tet(const Options& o, std::ostream& out) {
  Document doc = load(o.pts);
  auto log = io::parse_fliplog(io::read_file(o.second));
  io::replay(log, doc.points);
  Triangulation T_u = io::triangulation_from_key(log.sequence.start, doc.points);
  auto X = sequence_to_tetrahedralization(T_u, log.sequence, doc.points);
  auto rep = validate_tetrahedralization(X, doc.points);
  out << "tets " << X.tets.size() << '\n';
  print_tets(out, "tet list", X.tets);
  out << "valid " << (rep.ok() ? "yes" : "no") << '\n';
  if (!rep.ok()) out << rep.summary() << '\n';
  if (!o.off.empty()) io::write_file(o.off, io::write_off(X, doc.points));
  if (!o.output.empty()) {
    Document res{doc.name, doc.points, {{"lower", X.lower}, {"upper", X.upper}}, X};
    io::write_file(o.output, io::write_document(res));
  }
  return rep.ok() ? kOk : kFailed;
}

int cmd_tet2seq(const Options& o, std::ostream& out) {
  Document doc = load(o.pts);
  Tetrahedralization X = load_tets(o.second, doc.points);
  Direction3 d = o.direction.empty() ? Direction3::z_axis() : parse_direction3(o.direction);
  out << "direction " << d.str() << '\n';
  auto R = reproject_along_direction(X, doc.points, d);
  auto r = tetrahedralization_to_sequence(R.tets, R.points, Side::Lower);
  out << "status " << to_string(r.status) << '\n';
  out << "flips " << r.sequence.flips.size() << '\n';
  if (r.status == TetToSeqStatus::Stuck) {
    print_tets(out, "remaining", r.remaining);
    auto cyc = acyclicity_check(r.remaining, R.points, Direction3::z_axis());
    if (!cyc.acyclic) print_tets(out, "cycle", cyc.cycle);
    return kFailed;
  }
  auto back = sequence_to_tetrahedralization(R.tets.lower, r.sequence, R.points).tets;
  auto expected = R.tets.tets;
  std::sort(back.begin(), back.end());
  std::sort(expected.begin(), expected.end());
  const bool same = back == expected;
  out << "roundtrip " << (same ? "identical" : "DIFFERENT") << '\n';
  std::string log = io::write_fliplog(r.sequence, r.final.key());
  if (o.log.empty()) {
    out << log;
  } else {
    io::write_file(o.log, log);
  }
  if (!o.output.empty()) {
    Document res{doc.name + "-reprojected", R.points, {{"lower", R.tets.lower}, {"upper", R.tets.upper}}, R.tets};
    io::write_file(o.output, io::write_document(res));
  }
  return same ? kOk : kFailed;
}

int cmd_check_regular(const Options& o, std::ostream& out) {
  Document doc = load(o.pts);
  Triangulation T = load_triangulation(o.tri, doc.points);
  auto r = is_regular(T, doc.points);
  if (!r.regular) {
    out << "NonRegular\n";
    return kFailed;
  }
  out << "Regular\nwitness";
  for (const Rat& h : r.witness) out << ' ' << to_string(h);
  out << '\n';
  return kOk;
}

int cmd_acyclic(const Options& o, std::ostream& out) {
  Document doc = load(o.pts);
  Tetrahedralization X = load_tets(o.second, doc.points);
  auto r = acyclicity_check(X, doc.points, parse_direction3(o.direction));
  if (r.acyclic) {
    out << "Acyclic\n";
    return kOk;
  }
  print_tets(out, "Cycle", r.cycle);
  return kFailed;
}

int cmd_tri_poly(const Options& o, std::ostream& out) {
  Document doc = load(o.pts);
  PolyhedronInput P{doc.points, load_triangulation(o.tri, doc.points), load_triangulation(o.second, doc.points)};
  TriangulatorOptions opts;
  opts.checks.max_nodes = max_nodes(o.nodes);
  auto r = triangulate_polyhedron(P, opts);
  out << r.report.summary();
  out << "outcome " << to_string(r.kind) << '\n';
  if (r.kind == PolyhedronOutcome::Kind::InvalidInput) return kInput;
  out << "direction " << to_string(*r.report.direction) << '\n';
  out << "flips " << r.stats.flips << '\n';
  out << "conformity tests " << r.stats.conformity_tests << '\n';
  if (r.kind == PolyhedronOutcome::Kind::Success) {
    print_tets(out, "tets", r.tets.tets);
    if (!o.off.empty()) io::write_file(o.off, io::write_off(r.tets, doc.points));
    if (!o.log.empty()) io::write_file(o.log, io::write_fliplog(r.sequence, P.target.key()));
    return kOk;
  }
  const auto& c = *r.certificate;
  out << "stuck at " << c.stuck.key() << '\n';
  out << "blocked edges:";
  for (Edge e : c.blocked_edges) out << ' ' << e.u << '-' << e.v;
  out << "\nblocked insertions:";
  for (Label v : c.blocked_insertions) out << ' ' << v;
  out << '\n';
  if (c.cycles) print_certificate(out, *c.cycles);
  return kFailed;
}

bool is_input_error(ErrorCode c) {
  switch (c) {
    case ErrorCode::ParseError:
    case ErrorCode::DegenerateInput:
    case ErrorCode::DegenerateBase:
    case ErrorCode::DegenerateLift:
    case ErrorCode::DegenerateDirection:
    case ErrorCode::NotApplicable:
    case ErrorCode::NotMonotone:
    case ErrorCode::EdgeNotInTriangulation:
    case ErrorCode::HullEdge:
    case ErrorCode::OutsideDomain:
      return true;
    default:
      return false;
  }
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Directed flips, flip posets and lifted tetrahedralizations", "flipforge"};
  app.require_subcommand(1);
  Options o;

  auto* gen = app.add_subcommand("gen", "Write a corpus dataset");
  gen->add_option("name", o.name, "prism6, schonhardt7, ngon, random, random-convex, random-concave")->required();
  gen->add_option("--n", o.n, "Point count for ngon and random");
  gen->add_option("--seed", o.seed, "Seed for random datasets");
  gen->add_option("-o,--output", o.output, "Output document")->required();

  auto* lawson = app.add_subcommand("lawson", "Run directed Lawson flips");
  lawson->add_option("points", o.pts, "Point document")->required();
  lawson->add_option("--start", o.start, "Start triangulation as file#role (default: the opposite extreme)");
  lawson->add_option("--dir", o.dir, "up or down")->required();
  lawson->add_option("--policy", o.policy, "stack, first or random");
  lawson->add_option("--seed", o.seed, "Seed for --policy random");
  lawson->add_option("--log", o.log, "Write the flip log here");

  auto* poset = app.add_subcommand("poset", "Build the directed flip graph");
  poset->add_option("points", o.pts, "Point document")->required();
  poset->add_option("--dir", o.dir, "up or down")->required();
  poset->add_option("--dot", o.dot, "Write Graphviz DOT here");
  poset->add_option("--max-nodes", o.nodes, "Enumeration budget (also FLIPFORGE_MAX_NODES)");
  poset->add_flag("--regularity", o.regularity, "List non-regular nodes");

  auto* s2t = app.add_subcommand("seq2tet", "Tetrahedralization of a monotone flip log");
  s2t->add_option("points", o.pts, "Point document")->required();
  s2t->add_option("fliplog", o.second, "Flip log")->required();
  s2t->add_option("--off", o.off, "Write OFF here");
  s2t->add_option("-o,--output", o.output, "Write a document with the tets here");

  auto* t2s = app.add_subcommand("tet2seq", "Monotone flip sequence of a tetrahedralization");
  t2s->add_option("points", o.pts, "Point document")->required();
  t2s->add_option("tets", o.second, "Document or OFF file with the tets")->required();
  t2s->add_option("--direction", o.direction, "Viewing direction dx,dy,dz (default 0,0,1)");
  t2s->add_option("--log", o.log, "Write the flip log here instead of stdout");
  t2s->add_option("-o,--output", o.output, "Write the reprojected document here");

  auto* reg = app.add_subcommand("check-regular", "Decide regularity of a triangulation");
  reg->add_option("points", o.pts, "Point document")->required();
  reg->add_option("triangulation", o.tri, "file#role")->required();

  auto* acyc = app.add_subcommand("acyclic", "In-front/behind cycle check");
  acyc->add_option("points", o.pts, "Point document")->required();
  acyc->add_option("tets", o.second, "Document or OFF file with the tets")->required();
  acyc->add_option("--direction", o.direction, "Viewing direction dx,dy,dz")->required();

  auto* poly = app.add_subcommand("tri-poly", "Triangulate the polyhedron between two sections");
  poly->add_option("points", o.pts, "Point document")->required();
  poly->add_option("source", o.tri, "file#role")->required();
  poly->add_option("target", o.second, "file#role")->required();
  poly->add_option("--off", o.off, "Write OFF here");
  poly->add_option("--log", o.log, "Write the flip log here");
  poly->add_option("--max-nodes", o.nodes, "Budget for the target's poset check");

  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? kOk : kInput;
  }

  try {
    if (gen->parsed()) return cmd_gen(o, out);
    if (lawson->parsed()) return cmd_lawson(o, out);
    if (poset->parsed()) return cmd_poset(o, out);
    if (s2t->parsed()) return cmd_seq2tet(o, out);
    if (t2s->parsed()) return cmd_tet2seq(o, out);
    if (reg->parsed()) return cmd_check_regular(o, out);
    if (acyc->parsed()) return cmd_acyclic(o, out);
    if (poly->parsed()) return cmd_tri_poly(o, out);
  } catch (const Error& e) {
    err << "flipforge: " << e.what() << '\n';
    return is_input_error(e.code()) ? kInput : kFailed;
  }
  return kInput;
}

}  // namespace flipforge::cli
