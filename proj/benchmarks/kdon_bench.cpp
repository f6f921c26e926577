#include <vector>

#include <benchmark/benchmark.h>
#include <gmpxx.h>

#include "kdon/bi_series.hpp"
#include "kdon/geometry.hpp"
#include "kdon/modular.hpp"
#include "kdon/q_laurent.hpp"
#include "kdon/wallcross.hpp"

using namespace kdon;

namespace {

const ContextPtr& bench_ctx() {
  static ContextPtr ctx = build_context(12, default_window(12));
  return ctx;
}

QLaurent dense_series(i64 width) {
  std::vector<GaussianRational> c;
  c.reserve(width);
  for (i64 k = 0; k < width; ++k) c.push_back(GaussianRational(mpq_class(k + 1, k + 2)));
  return QLaurent::from_coeffs(c, 0, width - 1);
}

void BM_QLaurentMul(benchmark::State& state) {
  QLaurent a = dense_series(state.range(0));
  QLaurent b = dense_series(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(a * b);
}
BENCHMARK(BM_QLaurentMul)->Arg(64)->Arg(256);

void BM_BiSeriesMul(benchmark::State& state) {
  const BiSeries& t = bench_ctx()->theta4h();
  BiSeries s = t;
  for (auto _ : state) benchmark::DoNotOptimize(s * t);
}
BENCHMARK(BM_BiSeriesMul);

void BM_ContextBuild(benchmark::State& state) {
  const i64 D = state.range(0);
  for (auto _ : state) benchmark::DoNotOptimize(build_context(D, default_window(D)));
}
BENCHMARK(BM_ContextBuild)->Arg(6)->Arg(10);

void BM_WallDelta(benchmark::State& state) {
  const ContextPtr& ctx = bench_ctx();
  Surface ph = surface_p2hat();
  for (auto _ : state) benchmark::DoNotOptimize(delta(ctx, ph, {1, 2}, {2, 0}, 12));
}
BENCHMARK(BM_WallDelta);

}  // namespace

BENCHMARK_MAIN();
