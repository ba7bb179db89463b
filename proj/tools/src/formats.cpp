#include "flipforge/formats.hpp"

#include <algorithm>
#include <fstream>
#include <iomanip>
#include <map>
#include <sstream>

#include <json.hpp>

#include "flipforge/error.hpp"

namespace flipforge::io {

using nlohmann::json;

namespace {

[[noreturn]] void fail(const std::string& msg) { throw Error(ErrorCode::ParseError, msg); }

Rat rat_of(const json& j, const std::string& where) {
  if (j.is_number_integer()) return Rat(std::to_string(j.get<long long>()));
  if (j.is_string()) return parse_rat(j.get<std::string>());
  fail(where + ": expected an integer or a \"p/q\" string");
}

Label label_of(const json& j, Label n, const std::string& where) {
  if (!j.is_number_integer()) fail(where + ": expected an integer label");
  auto v = j.get<long long>();
  if (v < 0 || v >= n) fail(where + ": label " + std::to_string(v) + " out of range");
  return static_cast<Label>(v);
}

json triangles_json(const Triangulation& T) {
  json a = json::array();
  for (const auto& t : T.triangles()) a.push_back({t[0], t[1], t[2]});
  return a;
}

Triangulation triangles_of(const json& j, const LiftedPointSet& A, const std::string& where) {
  if (!j.is_array()) fail(where + ": expected a list of triangles");
  std::vector<std::array<Label, 3>> tris;
  for (const auto& t : j) {
    if (!t.is_array() || t.size() != 3) fail(where + ": a triangle needs three labels");
    tris.push_back({label_of(t[0], A.size(), where), label_of(t[1], A.size(), where),
                    label_of(t[2], A.size(), where)});
  }
  auto rep = validate_triangulation(tris, A);
  if (!rep.ok()) fail(where + " is not a triangulation: " + rep.summary());
  return Triangulation(A, std::move(tris));
}

std::string decimal(const Rat& r) {
  std::ostringstream os;
  os << std::setprecision(17) << r.get_d();
  return os.str();
}

std::array<std::array<Label, 3>, 4> faces_of(const Tet& t) {
  return {{{t[1], t[2], t[3]}, {t[0], t[2], t[3]}, {t[0], t[1], t[3]}, {t[0], t[1], t[2]}}};
}

}  // namespace

Document to_document(const Dataset& d) {
  return {d.name, d.points, d.triangulations, d.tetrahedralization};
}

Document parse_document(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    fail(std::string("malformed JSON: ") + e.what());
  }
  if (!j.is_object()) fail("document must be a JSON object");
  if (j.value("version", 0) != 1) fail("unsupported document version");
  if (!j.contains("points") || !j["points"].is_array()) fail("missing points");
  const auto& pts = j["points"];
  const Label n = static_cast<Label>(pts.size());
  std::vector<Point2> coords(n);
  std::vector<bool> seen(n, false);
  for (const auto& p : pts) {
    if (!p.is_object() || !p.contains("label") || !p.contains("x") || !p.contains("y")) {
      fail("each point needs label, x and y");
    }
    Label v = label_of(p["label"], n, "points");
    if (seen[v]) fail("duplicate point label " + std::to_string(v));
    seen[v] = true;
    coords[v] = {rat_of(p["x"], "points"), rat_of(p["y"], "points")};
  }
  std::vector<Rat> heights(n);
  const json hs = j.value("heights", json::object());
  if (!hs.is_object() || static_cast<Label>(hs.size()) != n) fail("heights must give one value per label");
  for (auto it = hs.begin(); it != hs.end(); ++it) {
    Label v;
    try {
      std::size_t used = 0;
      v = static_cast<Label>(std::stol(it.key(), &used));
      if (used != it.key().size()) throw std::invalid_argument(it.key());
    } catch (const std::exception&) {
      fail("height key '" + it.key() + "' is not a label");
    }
    if (v < 0 || v >= n) fail("height label " + it.key() + " out of range");
    heights[v] = rat_of(it.value(), "heights");
  }
  Document doc{j.value("name", std::string()), LiftedPointSet(std::move(coords), std::move(heights)), {}, {}};
  if (j.contains("triangulations")) {
    const auto& ts = j["triangulations"];
    if (!ts.is_object()) fail("triangulations must map roles to triangle lists");
    for (auto it = ts.begin(); it != ts.end(); ++it) {
      doc.triangulations.emplace(it.key(), triangles_of(it.value(), doc.points, "triangulation '" + it.key() + "'"));
    }
  }
  if (j.contains("tetrahedralization")) {
    const auto& x = j["tetrahedralization"];
    if (!x.is_object() || !x.contains("tets")) fail("tetrahedralization needs tets");
    std::vector<Tet> tets;
    for (const auto& t : x["tets"]) {
      if (!t.is_array() || t.size() != 4) fail("a tet needs four labels");
      tets.push_back(make_tet(label_of(t[0], n, "tets"), label_of(t[1], n, "tets"), label_of(t[2], n, "tets"),
                              label_of(t[3], n, "tets")));
    }
    std::sort(tets.begin(), tets.end());
    if (x.contains("lower") && x.contains("upper")) {
      doc.tetrahedralization = Tetrahedralization{tets, triangles_of(x["lower"], doc.points, "lower section"),
                                                  triangles_of(x["upper"], doc.points, "upper section")};
    } else {
      doc.tetrahedralization = with_boundary(std::move(tets), doc.points);
    }
  }
  return doc;
}

std::string write_document(const Document& doc) {
  json j;
  j["version"] = 1;
  j["name"] = doc.name;
  json pts = json::array();
  json hs = json::object();
  for (Label v = 0; v < doc.points.size(); ++v) {
    pts.push_back({{"label", v}, {"x", to_string(doc.points.point(v).x)}, {"y", to_string(doc.points.point(v).y)}});
    hs[std::to_string(v)] = to_string(doc.points.height(v));
  }
  j["points"] = pts;
  j["heights"] = hs;
  json ts = json::object();
  for (const auto& [role, T] : doc.triangulations) ts[role] = triangles_json(T);
  j["triangulations"] = ts;
  if (doc.tetrahedralization) {
    json tets = json::array();
    for (const Tet& t : doc.tetrahedralization->tets) tets.push_back({t[0], t[1], t[2], t[3]});
    j["tetrahedralization"] = {{"tets", tets},
                               {"lower", triangles_json(doc.tetrahedralization->lower)},
                               {"upper", triangles_json(doc.tetrahedralization->upper)}};
  }
  return j.dump(2) + "\n";
}

FlipLog parse_fliplog(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  FlipLog log;
  bool header = false, started = false, ended = false;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const std::string where = "fliplog line " + std::to_string(lineno);
    if (line == "# flipforge fliplog v1") {
      header = true;
      continue;
    }
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    std::string word;
    if (!(ls >> word)) continue;
    if (!header) fail(where + ": missing '# flipforge fliplog v1' header");
    if (ended) fail(where + ": content after 'end'");
    if (word == "start") {
      if (started || !(ls >> log.sequence.start)) fail(where + ": bad start line");
      started = true;
      continue;
    }
    if (!started) fail(where + ": flips before 'start'");
    if (word == "end") {
      if (!(ls >> log.end)) fail(where + ": bad end line");
      ended = true;
      continue;
    }
    Flip f;
    if (word == "22") {
      f.kind = FlipKind::Flip22;
    } else if (word == "13") {
      f.kind = FlipKind::Flip13;
    } else if (word == "31") {
      f.kind = FlipKind::Flip31;
    } else {
      fail(where + ": unknown flip kind '" + word + "'");
    }
    std::string dir;
    if (!(ls >> f.support[0] >> f.support[1] >> f.support[2] >> f.support[3] >> dir)) {
      fail(where + ": expected four labels and a direction");
    }
    if (dir == "up") {
      f.direction = Direction::Up;
    } else if (dir == "down") {
      f.direction = Direction::Down;
    } else {
      fail(where + ": direction must be up or down");
    }
    if (ls >> word) fail(where + ": trailing text");
    log.sequence.flips.push_back(f);
  }
  if (!header || !started || !ended) fail("fliplog needs a header, a start line and an end line");
  return log;
}

std::string write_fliplog(const FlipSequence& seq, const CanonicalKey& end) {
  std::ostringstream os;
  os << "# flipforge fliplog v1\n";
  os << "start " << seq.start << '\n';
  for (const Flip& f : seq.flips) {
    const char* kind = f.kind == FlipKind::Flip22 ? "22" : f.kind == FlipKind::Flip13 ? "13" : "31";
    os << kind << ' ' << f.support[0] << ' ' << f.support[1] << ' ' << f.support[2] << ' ' << f.support[3] << ' '
       << to_string(f.direction) << "  # " << notation(f) << '\n';
  }
  os << "end " << end << '\n';
  return os.str();
}

Triangulation triangulation_from_key(const CanonicalKey& key, const LiftedPointSet& A) {
  std::vector<std::array<Label, 3>> tris;
  std::istringstream keys(key);
  std::string item;
  while (std::getline(keys, item, ';')) {
    std::array<Label, 3> t{};
    char c1 = 0, c2 = 0;
    std::istringstream ts(item);
    if (!(ts >> t[0] >> c1 >> t[1] >> c2 >> t[2]) || c1 != ',' || c2 != ',') fail("bad key '" + key + "'");
    for (Label v : t) {
      if (v < 0 || v >= A.size()) fail("key label out of range");
    }
    tris.push_back(t);
  }
  auto rep = validate_triangulation(tris, A);
  if (!rep.ok()) fail("key is not a triangulation: " + rep.summary());
  return Triangulation(A, std::move(tris));
}

Triangulation replay(const FlipLog& log, const LiftedPointSet& A) {
  Triangulation T = triangulation_from_key(log.sequence.start, A);
  for (const Flip& f : log.sequence.flips) {
    try {
      check_applicable(T, f, A);
      if (flip_direction(A, f, T) != f.direction) fail("flip " + notation(f) + " has the wrong direction");
    } catch (const Error& e) {
      if (e.code() == ErrorCode::ParseError) throw;
      fail("flip " + notation(f) + " does not apply: " + e.what());
    }
    T = apply_flip(T, f, A);
  }
  if (T.key() != log.end) fail("replay ends at " + T.key() + ", log says " + log.end);
  return T;
}

Tetrahedralization with_boundary(std::vector<Tet> tets, const LiftedPointSet& A) {
  std::sort(tets.begin(), tets.end());
  std::map<std::array<Label, 3>, std::vector<Label>> owners;
  for (const Tet& t : tets) {
    auto fs = faces_of(t);
    for (int i = 0; i < 4; ++i) owners[fs[i]].push_back(t[i]);
  }
  std::vector<std::array<Label, 3>> lower, upper;
  for (const auto& [f, opp] : owners) {
    if (opp.size() != 1) continue;
    if (A.orient2d(f[0], f[1], f[2]) == Sign::Zero) continue;
    Sign s = A.orient3d_lifted(f[0], f[1], f[2], opp[0]);
    (s == Sign::Positive ? lower : upper).push_back(f);
  }
  auto lo = validate_triangulation(lower, A), up = validate_triangulation(upper, A);
  if (!lo.ok() || !up.ok()) fail("tet boundary does not split into two triangulations");
  return {std::move(tets), Triangulation(A, std::move(lower)), Triangulation(A, std::move(upper))};
}

std::string write_off(const Tetrahedralization& X, const LiftedPointSet& A) {
  std::map<std::array<Label, 3>, int> uses;
  for (const Tet& t : X.tets) {
    for (const auto& f : faces_of(t)) ++uses[f];
  }
  std::vector<std::array<Label, 3>> boundary;
  for (const auto& [f, c] : uses) {
    if (c == 1) boundary.push_back(f);
  }
  std::ostringstream os;
  os << "OFF\n";
  os << "# flipforge tetrahedralization v1\n";
  for (Label v = 0; v < A.size(); ++v) {
    os << "# vertex " << v << ' ' << to_string(A.point(v).x) << ' ' << to_string(A.point(v).y) << ' '
       << to_string(A.height(v)) << '\n';
  }
  for (const Tet& t : X.tets) os << "# tet " << t[0] << ' ' << t[1] << ' ' << t[2] << ' ' << t[3] << '\n';
  os << A.size() << ' ' << boundary.size() << " 0\n";
  for (Label v = 0; v < A.size(); ++v) {
    os << decimal(A.point(v).x) << ' ' << decimal(A.point(v).y) << ' ' << decimal(A.height(v)) << '\n';
  }
  for (const auto& f : boundary) os << "3 " << f[0] << ' ' << f[1] << ' ' << f[2] << '\n';
  return os.str();
}

OffContents parse_off(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  std::map<Label, std::array<Rat, 3>> verts;
  std::vector<std::array<Label, 4>> raw;
  if (!std::getline(in, line) || line != "OFF") fail("not an OFF file");
  while (std::getline(in, line)) {
    std::istringstream ls(line);
    std::string hash, kind;
    if (!(ls >> hash) || hash != "#" || !(ls >> kind)) continue;
    if (kind == "vertex") {
      Label v;
      std::string x, y, z;
      if (!(ls >> v >> x >> y >> z)) fail("bad '# vertex' line");
      verts[v] = {parse_rat(x), parse_rat(y), parse_rat(z)};
    } else if (kind == "tet") {
      std::array<Label, 4> t{};
      if (!(ls >> t[0] >> t[1] >> t[2] >> t[3])) fail("bad '# tet' line");
      raw.push_back(t);
    }
  }
  const Label n = static_cast<Label>(verts.size());
  std::vector<Point2> coords;
  std::vector<Rat> heights;
  for (Label v = 0; v < n; ++v) {
    auto it = verts.find(v);
    if (it == verts.end()) fail("OFF sidecar labels are not dense");
    coords.push_back({it->second[0], it->second[1]});
    heights.push_back(it->second[2]);
  }
  LiftedPointSet A(std::move(coords), std::move(heights));
  std::vector<Tet> tets;
  for (const auto& t : raw) {
    for (Label v : t) {
      if (v < 0 || v >= n) fail("tet label out of range");
    }
    tets.push_back(make_tet(t[0], t[1], t[2], t[3]));
  }
  auto X = with_boundary(std::move(tets), A);
  return {std::move(A), std::move(X)};
}

std::string write_dot(const DirectedFlipGraph& G) {
  std::ostringstream os;
  os << "digraph flips {\n";
  os << "  // direction " << to_string(G.direction()) << '\n';
  std::vector<char> is_source(G.size(), 0), is_sink(G.size(), 0);
  for (auto i : G.sources()) is_source[i] = 1;
  for (auto i : G.sinks()) is_sink[i] = 1;
  for (std::size_t i = 0; i < G.size(); ++i) {
    os << "  n" << i << " [label=\"" << G.node(i).key() << "\"";
    if (is_source[i]) os << ", shape=box";
    if (is_sink[i]) os << ", shape=doublecircle";
    os << "];\n";
  }
  for (const FlipArc& a : G.arcs()) {
    os << "  n" << a.from << " -> n" << a.to << " [label=\"" << notation(a.flip) << "\"];\n";
  }
  os << "}\n";
  return os.str();
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail("cannot open '" + path + "'");
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) fail("cannot write '" + path + "'");
  out << text;
  if (!out) fail("write to '" + path + "' failed");
}

}  // namespace flipforge::io
