#include <vector>

#include <benchmark/benchmark.h>

#include "imdplan/collision.hpp"
#include "imdplan/products.hpp"
#include "imdplan/spectrum.hpp"
#include "imdplan/trace.hpp"

using namespace imdplan;

namespace {

ToneSet tones(int n) {
  std::vector<Tone> signals;
  for (int i = 0; i < n; ++i) {
    signals.emplace_back(Frequency::ghz(6.4 + 0.09 * i), PowerDbm{-110.0});
  }
  return ToneSet(Tone(Frequency::ghz(7.92), PowerDbm{-60.0}), std::move(signals));
}

void BM_EnumerateProducts(benchmark::State& state) {
  const auto ts = tones(static_cast<int>(state.range(0)));
  const int order = static_cast<int>(state.range(1));
  for (auto _ : state) {
    benchmark::DoNotOptimize(enumerate_products(ts, order));
  }
}
BENCHMARK(BM_EnumerateProducts)->Args({2, 5})->Args({5, 3})->Args({10, 3})->Args({3, 7});

void BM_DetectCollisions(benchmark::State& state) {
  std::vector<Frequency> f;
  for (int i = 0; i < state.range(0); ++i) f.push_back(Frequency::ghz(6.4 + 0.093 * i));
  const collision::CollisionPolicy policy;
  for (auto _ : state) {
    benchmark::DoNotOptimize(collision::detect_collisions(f, Frequency::ghz(7.92), policy));
  }
}
BENCHMARK(BM_DetectCollisions)->Arg(5)->Arg(10);

void BM_MonteCarlo(benchmark::State& state) {
  collision::MCConfig cfg;
  cfg.samples = static_cast<std::size_t>(state.range(0));
  const collision::CollisionPolicy policy;
  for (auto _ : state) {
    benchmark::DoNotOptimize(collision::mc_collision_probability(cfg, policy));
  }
}
BENCHMARK(BM_MonteCarlo)->Arg(200)->Arg(2000)->Unit(benchmark::kMillisecond);

void BM_ExtractTones(benchmark::State& state) {
  const oracle::TraceConfig cfg;
  const std::vector<Tone> in{Tone(cfg.bin_frequency(403), PowerDbm{-100.0}),
                             Tone(cfg.bin_frequency(390), PowerDbm{-100.0}),
                             Tone(cfg.bin_frequency(325), PowerDbm{-130.0})};
  const auto trace = oracle::synthesize_trace(in, cfg, 1e-7, 1);
  std::vector<Frequency> freqs;
  for (const auto& t : in) freqs.push_back(t.freq);
  for (auto _ : state) {
    benchmark::DoNotOptimize(oracle::extract_tones(trace, freqs, cfg.window));
  }
}
BENCHMARK(BM_ExtractTones);

}  // namespace

BENCHMARK_MAIN();
