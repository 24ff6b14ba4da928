// Serial reference against the OpenMP kernels on desk-sized inputs.
// Thread count follows BICENS_THREADS / OMP_NUM_THREADS.

#include <benchmark/benchmark.h>

#include <cmath>
#include <vector>

#include "bicens/geometry.hpp"
#include "bicens/npmle.hpp"
#include "bicens/parallel.hpp"
#include "bicens/plugin.hpp"
#include "bicens/simstudy.hpp"
#include "bicens/smle.hpp"

using namespace bicens;

namespace {

const double kH = std::pow(1000.0, -1.0 / 6.0);

struct Fixture {
  std::vector<CurrentStatusObs> obs;
  Dataset data;
  std::vector<Point> sieve;
  DiscreteDistribution dist;
  std::vector<double> axis;

  Fixture() {
    obs = make_cs_sample(Truth::kF0A, 1000, 11);
    data = cs_to_rectangles(obs);
    sieve = random_sieve(1000, 12);
    const auto f = fit(incidence(data, sieve), data.frequencies());
    dist = support_distribution(sieve, f.masses);
    for (int i = 0; i <= 200; ++i) axis.push_back(i / 200.0);
  }
};

const Fixture& fixture() {
  static const Fixture f;
  return f;
}

template <bool Serial>
void BM_Incidence(benchmark::State& state) {
  const auto& f = fixture();
  for (auto _ : state)
    benchmark::DoNotOptimize(Serial ? incidence_serial(f.data, f.sieve) : incidence(f.data, f.sieve));
}

template <bool Serial>
void BM_SmleGrid(benchmark::State& state) {
  const auto& f = fixture();
  const SmleEstimate est{f.dist, KernelSpec(KernelOrder::kSecond, kH)};
  for (auto _ : state)
    benchmark::DoNotOptimize(Serial ? smle_grid_serial(est, f.axis, f.axis) : smle_grid(est, f.axis, f.axis));
}

template <bool Serial>
void BM_PluginGrid(benchmark::State& state) {
  const auto& f = fixture();
  for (auto _ : state)
    benchmark::DoNotOptimize(Serial ? build_plugin_grid_serial(f.obs, 0.1, kH)
                                    : build_plugin_grid(f.obs, 0.1, kH));
}

template <bool Serial>
void BM_FenchelProbe(benchmark::State& state) {
  const auto& f = fixture();
  std::vector<Point> probe;
  for (double x : f.axis)
    for (int j = 0; j <= 50; ++j) probe.push_back({x, j / 50.0});
  for (auto _ : state)
    benchmark::DoNotOptimize(Serial ? fenchel_check_ic2_serial(f.data, f.dist, probe)
                                    : fenchel_check_ic2(f.data, f.dist, probe));
}

template <bool Serial>
void BM_Study(benchmark::State& state) {
  Scenario sc;
  sc.n = 200;
  sc.reps = 64;
  for (auto _ : state) benchmark::DoNotOptimize(Serial ? run_study_serial(sc) : run_study(sc));
}

BENCHMARK(BM_Incidence<true>)->Name("incidence/serial")->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Incidence<false>)->Name("incidence/omp")->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_SmleGrid<true>)->Name("smle_grid/serial")->Unit(benchmark::kMillisecond);
BENCHMARK(BM_SmleGrid<false>)->Name("smle_grid/omp")->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_PluginGrid<true>)->Name("plugin_grid/serial")->Unit(benchmark::kMillisecond);
BENCHMARK(BM_PluginGrid<false>)->Name("plugin_grid/omp")->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_FenchelProbe<true>)->Name("fenchel_probe/serial")->Unit(benchmark::kMillisecond);
BENCHMARK(BM_FenchelProbe<false>)->Name("fenchel_probe/omp")->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_Study<true>)->Name("study_n200_r64/serial")->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Study<false>)->Name("study_n200_r64/omp")->Unit(benchmark::kMillisecond)->UseRealTime();

}  // namespace

int main(int argc, char** argv) {
  configure_threads();
  benchmark::Initialize(&argc, argv);
  benchmark::RunSpecifiedBenchmarks();
  benchmark::Shutdown();
  return 0;
}
