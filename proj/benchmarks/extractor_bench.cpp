#include <benchmark/benchmark.h>

#include "orbstream/orbstream.hpp"

namespace {

using namespace orbstream;

const Image& frame() {
  static const Image img = read_pgm(ORBSTREAM_BENCH_FRAME);
  return img;
}

const std::vector<PatternPair>& pattern() {
  static const auto p = generate_pattern();
  return p;
}

void BM_BuildPyramid(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(build_pyramid(frame()));
}
BENCHMARK(BM_BuildPyramid)->Unit(benchmark::kMillisecond);

void BM_DetectFeatures(benchmark::State& state) {
  const int threshold = static_cast<int>(state.range(0));
  std::size_t found = 0;
  for (auto _ : state) {
    const auto f = detect_features(frame(), threshold);
    found = f.size();
    benchmark::DoNotOptimize(f.data());
  }
  state.counters["features"] = static_cast<double>(found);
}
BENCHMARK(BM_DetectFeatures)->Arg(10)->Arg(20)->Arg(40)->Unit(benchmark::kMillisecond);

void BM_GaussianSmooth(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(gaussian_smooth(frame()));
}
BENCHMARK(BM_GaussianSmooth)->Unit(benchmark::kMillisecond);

void BM_ExtractBatch(benchmark::State& state) {
  const Pyramid pyr = build_pyramid(frame());
  for (auto _ : state) benchmark::DoNotOptimize(extract_batch(pyr, {}, pattern()));
  state.counters["fps"] = benchmark::Counter(static_cast<double>(state.iterations()),
                                             benchmark::Counter::kIsRate);
}
BENCHMARK(BM_ExtractBatch)->Unit(benchmark::kMillisecond);

void BM_RunStream(benchmark::State& state) {
  const Pyramid pyr = build_pyramid(frame());
  for (auto _ : state) benchmark::DoNotOptimize(run_stream(pyr, {}, pattern()));
  state.counters["fps"] = benchmark::Counter(static_cast<double>(state.iterations()),
                                             benchmark::Counter::kIsRate);
}
BENCHMARK(BM_RunStream)->Unit(benchmark::kMillisecond);

void BM_TruncateAndOrient(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const auto samples = enumerate_sweep_samples(SweepSampleSpec{});
  for (auto _ : state) {
    double acc = 0.0;
    for (const Moments& m : samples) acc += compute_sincos(truncate_moments(m, n)).sin;
    benchmark::DoNotOptimize(acc);
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(samples.size()));
}
BENCHMARK(BM_TruncateAndOrient)->Arg(4)->Arg(8)->Arg(12);

void BM_WordlengthSweepSmall(benchmark::State& state) {
  SweepSampleSpec spec;
  spec.grid_steps_per_octave = 1;
  spec.grid_angles = 36;
  spec.random_pairs = 128;
  const std::vector<int> wordlens = {4, 8, 12};
  for (auto _ : state) benchmark::DoNotOptimize(wordlength_sweep(wordlens, spec));
}
BENCHMARK(BM_WordlengthSweepSmall)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
