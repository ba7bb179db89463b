#include <benchmark/benchmark.h>

#include "flipforge/corpus.hpp"
#include "flipforge/flip_graph.hpp"
#include "flipforge/polyhedron.hpp"

using namespace flipforge;

static void BM_EnumerateNgon(benchmark::State& state) {
  auto d = gen_convex_ngon(static_cast<Label>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(enumerate_triangulations(d.points).size());
}
BENCHMARK(BM_EnumerateNgon)->DenseRange(6, 9);

static void BM_BuildFlipGraph(benchmark::State& state) {
  auto d = gen_random(static_cast<Label>(state.range(0)), 1, HeightMode::Convex);
  for (auto _ : state) benchmark::DoNotOptimize(build_directed_flip_graph(d.points, Direction::Up).size());
}
BENCHMARK(BM_BuildFlipGraph)->DenseRange(6, 8);

static void BM_LawsonDown(benchmark::State& state) {
  auto d = gen_random(static_cast<Label>(state.range(0)), 2, HeightMode::Convex);
  auto start = extreme_triangulation(d.points, Side::Upper);
  for (auto _ : state) benchmark::DoNotOptimize(lawson_directed(start, d.points, Direction::Down).sequence.flips.size());
}
BENCHMARK(BM_LawsonDown)->Arg(8)->Arg(16)->Arg(32);

static void BM_IsRegular(benchmark::State& state) {
  auto d = gen_random(static_cast<Label>(state.range(0)), 3);
  auto T = extreme_triangulation(d.points, Side::Lower);
  for (auto _ : state) benchmark::DoNotOptimize(is_regular(T, d.points).regular);
}
BENCHMARK(BM_IsRegular)->Arg(8)->Arg(16);

static void BM_TriangulatePrism6(benchmark::State& state) {
  auto d = gen_prism6();
  PolyhedronInput P{d.points, d.role("farthest"), d.role("regular")};
  TriangulatorOptions opts;
  opts.checks.check_target = false;
  for (auto _ : state) benchmark::DoNotOptimize(triangulate_polyhedron(P, opts).stats.flips);
}
BENCHMARK(BM_TriangulatePrism6);

// Served from the per-set sign cache.
static void BM_Orient3dLifted(benchmark::State& state) {
  auto d = gen_random(8, 4);
  const auto& A = d.points;
  Label i = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(A.orient3d_lifted(i % 8, (i + 1) % 8, (i + 2) % 8, (i + 3) % 8));
    ++i;
  }
}
BENCHMARK(BM_Orient3dLifted);

// The uncached exact predicate on the same points.
static void BM_Orient3dLiftedExact(benchmark::State& state) {
  auto d = gen_random(8, 4);
  const auto& A = d.points;
  Label i = 0;
  for (auto _ : state) {
    Label a = i % 8, b = (i + 1) % 8, c = (i + 2) % 8, e = (i + 3) % 8;
    benchmark::DoNotOptimize(orient3d_lifted(A.point(a), A.height(a), A.point(b), A.height(b), A.point(c),
                                             A.height(c), A.point(e), A.height(e)));
    ++i;
  }
}
BENCHMARK(BM_Orient3dLiftedExact);

BENCHMARK_MAIN();
