// Serial reference implementations against their OpenMP counterparts.

#include <benchmark/benchmark.h>

#include "sslab/curves.hpp"
#include "sslab/cyclotomic.hpp"
#include "sslab/families.hpp"
#include "sslab/galois.hpp"
#include "sslab/parallel.hpp"
#include "sslab/quadratic.hpp"

using namespace sslab;

namespace {

template <bool Parallel>
void BM_ClassNumber(benchmark::State& st) {
  const i64 d = -st.range(0);
  for (auto _ : st) benchmark::DoNotOptimize(Parallel ? quadratic::class_number(d) : quadratic::class_number_serial(d));
}

template <bool Parallel>
void BM_CountPoints(benchmark::State& st) {
  const curves::WeierstrassCurve e{0, 1, 1, -9, -15};
  const i64 q = st.range(0);
  for (auto _ : st)
    benchmark::DoNotOptimize(Parallel ? curves::count_points(e, q) : curves::count_points_serial(e, q));
}

template <bool Parallel>
void BM_TorsionSearch(benchmark::State& st) {
  const families::SearchBox box{st.range(0)};
  for (auto _ : st) {
    auto hits = Parallel ? families::torsion_prime_power_search(3, 100, box)
                         : families::torsion_prime_power_search_serial(3, 100, box);
    benchmark::DoNotOptimize(hits.data());
  }
}

template <bool Parallel>
void BM_UnitBox(benchmark::State& st) {
  for (auto _ : st) {
    auto r = Parallel ? cyclo::unit_image_rank(5, 31) : cyclo::unit_image_rank_serial(5, 31);
    benchmark::DoNotOptimize(r.bound);
  }
}

template <bool Parallel>
void BM_StableSubmodules(benchmark::State& st) {
  const auto rep = galois::build_rep(2, 2, 2, 4);
  const int n = static_cast<int>(st.range(0));
  for (auto _ : st) {
    auto subs = Parallel ? galois::stable_submodules(rep, n) : galois::stable_submodules_serial(rep, n);
    benchmark::DoNotOptimize(subs.data());
  }
}

template <bool Parallel>
void BM_NeumannSetzer(benchmark::State& st) {
  for (auto _ : st) {
    auto v = Parallel ? families::ns_enumerate(st.range(0)) : families::ns_enumerate_serial(st.range(0));
    benchmark::DoNotOptimize(v.data());
  }
}

}  // namespace

BENCHMARK(BM_ClassNumber<false>)->Arg(164)->Arg(1'000'003)->Arg(100'000'007)->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_ClassNumber<true>)->Arg(164)->Arg(1'000'003)->Arg(100'000'007)->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_CountPoints<false>)->Arg(7919)->Arg(999'983)->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_CountPoints<true>)->Arg(7919)->Arg(999'983)->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_TorsionSearch<false>)->Arg(4)->Arg(8)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_TorsionSearch<true>)->Arg(4)->Arg(8)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_UnitBox<false>)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_UnitBox<true>)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_StableSubmodules<false>)->Arg(1)->Arg(2)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_StableSubmodules<true>)->Arg(1)->Arg(2)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_NeumannSetzer<false>)->Arg(1'000'000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_NeumannSetzer<true>)->Arg(1'000'000)->Unit(benchmark::kMillisecond);

int main(int argc, char** argv) {
  configure_threads();
  benchmark::Initialize(&argc, argv);
  if (benchmark::ReportUnrecognizedArguments(argc, argv)) return 1;
  benchmark::AddCustomContext("omp_threads", std::to_string(max_threads()));
  benchmark::RunSpecifiedBenchmarks();
  benchmark::Shutdown();
  return 0;
}
