#include <doctest.h>

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <sstream>

#include "flipforge/cli.hpp"
#include "flipforge/corpus.hpp"
#include "flipforge/error.hpp"
#include "flipforge/formats.hpp"

using namespace flipforge;
namespace fs = std::filesystem;

namespace {

struct Result {
  int code;
  std::string out, err;
};

Result invoke(std::vector<std::string> args) {
  std::ostringstream out, err;
  int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

bool contains(const std::string& s, const std::string& what) { return s.find(what) != std::string::npos; }

struct TempDir {
  fs::path dir;
  TempDir() {
    dir = fs::temp_directory_path() / ("flipforge-test-" + std::to_string(std::rand()) + "-" +
                                       std::to_string(reinterpret_cast<std::uintptr_t>(this)));
    fs::create_directories(dir);
  }
  ~TempDir() { fs::remove_all(dir); }
  std::string operator/(const std::string& name) const { return (dir / name).string(); }
};

std::vector<Tet> sorted(std::vector<Tet> v) {
  std::sort(v.begin(), v.end());
  return v;
}

}  // namespace

TEST_CASE("document round trip") {
  for (const char* name : {"prism6", "schonhardt7", "random"}) {
    auto d = generate(name, 7, 5);
    auto text = io::write_document(io::to_document(d));
    auto doc = io::parse_document(text);
    CHECK(doc.name == d.name);
    CHECK(doc.points == d.points);
    CHECK(doc.triangulations == d.triangulations);
    CHECK(doc.tetrahedralization.has_value() == d.tetrahedralization.has_value());
    if (d.tetrahedralization) {
      CHECK(sorted(doc.tetrahedralization->tets) == sorted(d.tetrahedralization->tets));
      CHECK(doc.tetrahedralization->lower == d.tetrahedralization->lower);
    }
    CHECK(io::write_document(doc) == text);
  }
  CHECK_THROWS_AS(io::parse_document("{"), Error);
  CHECK_THROWS_AS(io::parse_document(R"({"version": 1, "points": [{"label": 0, "x": "1/0", "y": "0"}]})"), Error);
}

TEST_CASE("flip log round trip") {
  auto d = gen_prism6();
  auto r = lawson_directed(d.role("farthest"), d.points, Direction::Down);
  auto text = io::write_fliplog(r.sequence, r.final.key());
  auto log = io::parse_fliplog(text);
  CHECK(log.sequence.start == r.sequence.start);
  CHECK(log.sequence.flips == r.sequence.flips);
  CHECK(log.end == r.final.key());
  CHECK(io::replay(log, d.points) == r.final);

  auto wrong_end = io::parse_fliplog(io::write_fliplog(r.sequence, d.role("whirl").key()));
  CHECK_THROWS_AS(io::replay(wrong_end, d.points), Error);
  CHECK_THROWS_AS(io::parse_fliplog("start 0,1,2\n22 0 1 2\n"), Error);
  CHECK_THROWS_AS(io::parse_fliplog("nonsense"), Error);
}

TEST_CASE("OFF round trip keeps exact coordinates") {
  auto d = gen_schonhardt7();
  auto text = io::write_off(*d.tetrahedralization, d.points);
  CHECK(text.rfind("OFF", 0) == 0);
  auto back = io::parse_off(text);
  CHECK(back.points == d.points);
  CHECK(sorted(back.tets.tets) == sorted(d.tetrahedralization->tets));
  CHECK(back.tets.lower == d.tetrahedralization->lower);
  CHECK(back.tets.upper == d.tetrahedralization->upper);
}

TEST_CASE("DOT export") {
  auto d = gen_convex_ngon(5);
  auto dot = io::write_dot(build_directed_flip_graph(d.points, Direction::Up));
  CHECK(dot.rfind("digraph", 0) == 0);
  CHECK(contains(dot, "doublecircle"));
  CHECK(contains(dot, "shape=box"));
}

TEST_CASE("gen, lawson and seq2tet") {
  TempDir tmp;
  auto p = tmp / "prism6.json";
  auto g = invoke({"gen", "prism6", "-o", p});
  CHECK(g.code == 0);
  CHECK_FALSE(contains(g.out, "FAIL"));
  CHECK(fs::exists(p));
  auto first = io::read_file(p);
  CHECK(invoke({"gen", "prism6", "-o", p}).code == 0);
  CHECK(io::read_file(p) == first);

  auto down = invoke({"lawson", p, "--dir", "down", "--log", tmp / "down.log"});
  CHECK(down.code == 0);
  CHECK(contains(down.out, "status ReachedExtreme"));
  auto s2t = invoke({"seq2tet", p, tmp / "down.log", "--off", tmp / "down.off", "-o", tmp / "tets.json"});
  CHECK(s2t.code == 0);
  CHECK(contains(s2t.out, "valid yes"));
  CHECK(fs::exists(tmp / "down.off"));
  auto t2s = invoke({"tet2seq", p, tmp / "tets.json"});
  CHECK(t2s.code == 0);
  CHECK(contains(t2s.out, "roundtrip identical"));
  CHECK(invoke({"tet2seq", p, tmp / "down.off"}).code == 0);

  auto up = invoke({"lawson", p, "--dir", "up", "--start", p + "#whirl"});
  CHECK(up.code == 1);
  CHECK(contains(up.out, "redundant vertices: 3 4 5"));

  for (const char* policy : {"first", "random"}) {
    CHECK(invoke({"lawson", p, "--dir", "down", "--policy", policy, "--seed", "9"}).code == 0);
  }
  CHECK(invoke({"lawson", p, "--dir", "down", "--policy", "bogus"}).code == 2);
  CHECK(invoke({"lawson", p, "--dir", "sideways"}).code == 2);
  CHECK(invoke({"lawson", p, "--dir", "up", "--start", p + "#missing"}).code == 2);
}

TEST_CASE("poset, budgets and regularity") {
  TempDir tmp;
  auto p = tmp / "prism6.json";
  REQUIRE(invoke({"gen", "prism6", "-o", p}).code == 0);
  auto r = invoke({"poset", p, "--dir", "up", "--regularity", "--dot", tmp / "g.dot"});
  CHECK(r.code == 0);
  CHECK(contains(r.out, "nodes 18"));
  CHECK(contains(r.out, "arcs 30"));
  CHECK(contains(r.out, "non-regular 0,1,4;0,2,3;0,3,4;1,2,5;1,4,5;2,3,5;3,4,5"));
  CHECK(fs::exists(tmp / "g.dot"));

  auto tight = invoke({"poset", p, "--dir", "up", "--max-nodes", "5"});
  CHECK(tight.code == 1);
  CHECK(contains(tight.err, "BudgetExceeded"));
  ::setenv("FLIPFORGE_MAX_NODES", "5", 1);
  CHECK(invoke({"poset", p, "--dir", "up"}).code == 1);
  CHECK(invoke({"poset", p, "--dir", "up", "--max-nodes", "100"}).code == 0);
  ::unsetenv("FLIPFORGE_MAX_NODES");

  CHECK(invoke({"check-regular", p, p + "#whirl"}).code == 1);
  auto reg = invoke({"check-regular", p, p + "#regular"});
  CHECK(reg.code == 0);
  CHECK(contains(reg.out, "witness"));
}

TEST_CASE("schonhardt7 on the command line") {
  TempDir tmp;
  auto s = tmp / "s7.json";
  REQUIRE(invoke({"gen", "schonhardt7", "-o", s}).code == 0);
  auto z = invoke({"acyclic", s, s, "--direction", "0,0,1"});
  CHECK(z.code == 1);
  CHECK(contains(z.out, "Cycle"));
  CHECK(invoke({"acyclic", s, s, "--direction", "1,0,0"}).code == 0);
  CHECK(invoke({"acyclic", s, s, "--direction", "0,0,0"}).code == 2);
  auto stuck = invoke({"tet2seq", s, s});
  CHECK(stuck.code == 1);
  CHECK(contains(stuck.out, "status Stuck"));
  auto x = invoke({"tet2seq", s, s, "--direction", "1,0,0", "-o", tmp / "x.json", "--log", tmp / "x.log"});
  CHECK(x.code == 0);
  CHECK(contains(x.out, "roundtrip identical"));
  CHECK(invoke({"seq2tet", tmp / "x.json", tmp / "x.log"}).code == 0);
}

TEST_CASE("tri-poly") {
  TempDir tmp;
  auto p = tmp / "prism6.json";
  REQUIRE(invoke({"gen", "prism6", "-o", p}).code == 0);
  auto ok = invoke({"tri-poly", p, p + "#farthest", p + "#regular", "--off", tmp / "t.off", "--log", tmp / "t.log"});
  CHECK(ok.code == 0);
  CHECK(contains(ok.out, "outcome Success"));
  CHECK(invoke({"seq2tet", p, tmp / "t.log"}).code == 0);
  auto bad = invoke({"tri-poly", p, p + "#farthest", p + "#whirl"});
  CHECK(bad.code == 1);
  CHECK(contains(bad.out, "outcome Indecomposable"));
  CHECK(contains(bad.out, "blocked insertions: 3 4 5"));
}

TEST_CASE("usage and input errors exit with 2") {
  CHECK(invoke({}).code == 2);
  CHECK(invoke({"bogus"}).code == 2);
  CHECK(invoke({"lawson", "/nonexistent/file.json", "--dir", "up"}).code == 2);
  CHECK(invoke({"gen", "nope", "-o", "/tmp/x.json"}).code != 0);
  TempDir tmp;
  io::write_file(tmp / "bad.json", "{\"version\": 1");
  CHECK(invoke({"poset", tmp / "bad.json", "--dir", "up"}).code == 2);
  CHECK(invoke({"--help"}).code == 0);
}
