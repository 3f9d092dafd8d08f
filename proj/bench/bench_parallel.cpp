// Serial reference vs OpenMP: the symmetric matvec kernel and sweeps of
// independent experiment runs.
#include "riemann_accel/experiment.hpp"
#include "riemann_accel/kernels.hpp"

#include <benchmark/benchmark.h>

#include <filesystem>
#include <random>

#include <unistd.h>

using namespace riemann_accel;

namespace {

Matrix random_symmetric(Eigen::Index n) {
  std::mt19937_64 rng(1);
  std::normal_distribution<double> g;
  Matrix a(n, n);
  for (Eigen::Index j = 0; j < n; ++j)
    for (Eigen::Index i = 0; i <= j; ++i) a(i, j) = a(j, i) = g(rng);
  return a;
}

template <Vector (*Kernel)(const Matrix &, const Vector &)>
void BM_Matvec(benchmark::State &state) {
  const Matrix a = random_symmetric(state.range(0));
  const Vector x = Vector::Ones(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(Kernel(a, x));
  state.SetItemsProcessed(state.iterations() * state.range(0) * state.range(0));
}

BENCHMARK(BM_Matvec<kernels::symmetric_matvec_serial>)->Name("matvec/serial")->RangeMultiplier(4)->Range(64, 4096);
BENCHMARK(BM_Matvec<kernels::symmetric_matvec_parallel>)->Name("matvec/openmp")->RangeMultiplier(4)->Range(64, 4096);

std::vector<ExperimentConfig> sweep(int runs) {
  const auto dir = std::filesystem::temp_directory_path() / ("raccel-bench-" + std::to_string(::getpid()));
  std::filesystem::create_directories(dir);
  std::vector<ExperimentConfig> cfgs;
  for (int i = 0; i < runs; ++i) {
    ExperimentConfig c;
    c.seed = 100 + i;
    c.p = i % 2 ? 6.0 : 2.0;
    c.h = 1e-3;
    c.iters = 5000;
    c.record_every = 50;
    c.out = dir / ("run" + std::to_string(i) + ".csv");
    cfgs.push_back(c);
  }
  return cfgs;
}

void BM_SweepSerial(benchmark::State &state) {
  const auto cfgs = sweep(static_cast<int>(state.range(0)));
  for (auto _ : state)
    for (const auto &c : cfgs) benchmark::DoNotOptimize(run_experiment(c));
  std::filesystem::remove_all(cfgs.front().out.parent_path());
}

void BM_SweepParallel(benchmark::State &state) {
  const auto cfgs = sweep(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(run_experiments(cfgs));
  std::filesystem::remove_all(cfgs.front().out.parent_path());
}

BENCHMARK(BM_SweepSerial)->Name("sweep/serial")->Arg(8)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_SweepParallel)->Name("sweep/openmp")->Arg(8)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
