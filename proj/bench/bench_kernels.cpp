#include <benchmark/benchmark.h>

#include "rotgraph/curve.hpp"
#include "rotgraph/gallery.hpp"
#include "rotgraph/rotation_set.hpp"

using namespace rotgraph;

namespace {

const LiftedMap& interior() {
  static const LiftedMap f = gallery_build("mz_interior");
  return f;
}

void BM_DisplacementSerial(benchmark::State& state) {
  for (auto _ : state)
    benchmark::DoNotOptimize(displacement_field_serial(interior(), state.range(0), static_cast<int>(state.range(1))));
}

void BM_DisplacementParallel(benchmark::State& state) {
  for (auto _ : state)
    benchmark::DoNotOptimize(displacement_field_parallel(interior(), state.range(0), static_cast<int>(state.range(1))));
}

void BM_DenjoyParabolicField(benchmark::State& state) {
  static const LiftedMap f = gallery_build("denjoy_parabolic");
  for (auto _ : state) benchmark::DoNotOptimize(displacement_field_parallel(f, state.range(0), 16));
}

void BM_CrossingNumber(benchmark::State& state) {
  PLCurve a = horizontal_curve(Rational(1, 3));
  ImageOptions o;
  o.iterations = state.range(0);
  o.res = 64;
  // A sloped source keeps the image off the bands where the map is a pure translation.
  PLCurve src = straight_curve({1, 2}, {Rational(1, 7), Rational(0)});
  PLCurve img = image_curve(gallery_build("mz_interior"), src, o);
  for (auto _ : state) benchmark::DoNotOptimize(crossing_number(a, img));
  state.counters["segments"] = static_cast<double>(img.size());
}

}  // namespace

BENCHMARK(BM_DisplacementSerial)->Args({100, 32})->Args({500, 64})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_DisplacementParallel)->Args({100, 32})->Args({500, 64})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_DenjoyParabolicField)->Arg(200)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_CrossingNumber)->Arg(1)->Arg(2)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
