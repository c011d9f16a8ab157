#include <benchmark/benchmark.h>

#include "lfd/pipeline.hpp"

namespace {

using namespace lfd;

StarSetup setup_for(int p1, int u_vertex) {
  RunConfig c;
  c.signature = {p1, 3, 3};
  c.u_vertex = u_vertex;
  return setup_from_config(c);
}

void BM_Mul(benchmark::State& state) {
  Sampler s(1);
  const UElement g(s.disc(1.0), 0.4), h(s.disc(1.0), -1.3);
  for (auto _ : state) benchmark::DoNotOptimize(mul(g, h));
}
BENCHMARK(BM_Mul);

void BM_Act(benchmark::State& state) {
  Sampler s(2);
  const UElement g(s.disc(1.0), 0.4), h(s.disc(1.0), -1.3);
  const ConePoint a{Complex(0.2, 0.1), 0.05, 1.1};
  for (auto _ : state) benchmark::DoNotOptimize(act(g, h, a));
}
BENCHMARK(BM_Act);

void BM_RotationLift(benchmark::State& state) {
  const DiscPoint x(Complex(0.3, -0.4));
  for (auto _ : state) benchmark::DoNotOptimize(rotation_lift(x, 1.7));
}
BENCHMARK(BM_RotationLift);

void BM_EnumerateOrbit(benchmark::State& state) {
  const StarSetup s = setup_for(5, 0);
  const double radius = static_cast<double>(state.range(0)) / 100.0;
  std::size_t n = 0;
  for (auto _ : state) n = enumerate_orbit(s.group, s.u_index, radius).size();
  state.counters["points"] = static_cast<double>(n);
}
BENCHMARK(BM_EnumerateOrbit)->Arg(80)->Arg(90)->Arg(95)->Unit(benchmark::kMillisecond);

void BM_CandidateConstraints(benchmark::State& state) {
  const StarSetup s = setup_for(5, 0);
  const auto orbit = enumerate_orbit(s.group, s.u_index, 0.9);
  for (auto _ : state) benchmark::DoNotOptimize(candidate_constraints(orbit, s, 0.2));
}
BENCHMARK(BM_CandidateConstraints)->Unit(benchmark::kMillisecond);

void BM_BuildDomain(benchmark::State& state) {
  const StarSetup s = setup_for(static_cast<int>(state.range(0)), static_cast<int>(state.range(1)));
  BuildConfig cfg;
  cfg.verify_stability = false;
  for (auto _ : state) benchmark::DoNotOptimize(build_fundamental_domain(s, cfg));
}
BENCHMARK(BM_BuildDomain)->Args({5, 0})->Args({7, 0})->Args({9, 0})->Unit(benchmark::kMillisecond);

void BM_MembershipTranslate(benchmark::State& state) {
  const StarSetup s = setup_for(5, 0);
  const Domain d = build_fundamental_domain(s);
  Sampler rnd(3);
  for (auto _ : state) {
    const UElement a(rnd.disc(0.3), rnd.uniform(-0.3, 0.3));
    benchmark::DoNotOptimize(membership_translate(a, d, s));
  }
}
BENCHMARK(BM_MembershipTranslate)->Unit(benchmark::kMicrosecond);

}  // namespace

BENCHMARK_MAIN();
