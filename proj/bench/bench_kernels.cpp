// Serial reference vs OpenMP paths of the enumeration, sampling and ensemble
// kernels. Set OMP_NUM_THREADS to control the parallel width.

#include <benchmark/benchmark.h>
#include <omp.h>

#include <random>

#include "gyration/ensemble.hpp"
#include "gyration/kernels.hpp"

using namespace gyration;

namespace {

// Theta graph (three parallel edges) with random consistent displacements.
PermutationProblem theta_problem(int n, std::size_t dim) {
  const auto g = build_graph(2, {{1, 2}, {1, 2}, {1, 2}});
  const SubdivisionGraph sub(g, n);
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  Points xp(dim, 0), w(dim, 0);
  std::vector<double> p(dim);
  for (int v = 0; v < 2; ++v) {
    for (double& c : p) c = u(rng);
    xp.push_back(p);
  }
  for (int i = 0; i < 3; ++i) {
    std::vector<double> rest(dim);
    for (std::size_t c = 0; c < dim; ++c) rest[c] = xp[1][c] - xp[0][c];
    for (int j = 1; j < n; ++j) {
      for (std::size_t c = 0; c < dim; ++c) {
        p[c] = u(rng);
        rest[c] -= p[c];
      }
      w.push_back(p);
    }
    w.push_back(rest);
  }
  return PermutationProblem::from(StructureEmbedding(g, xp), GroupedDisplacements(sub, w));
}

Execution mode(const benchmark::State& state) { return state.range(0) == 0 ? Execution::serial : Execution::parallel; }

void label(benchmark::State& state) {
  state.SetLabel(state.range(0) == 0 ? "serial" : "parallel x" + std::to_string(omp_get_max_threads()));
}

void BM_ExactAverage(benchmark::State& state) {
  const auto problem = theta_problem(static_cast<int>(state.range(1)), 3);
  for (auto _ : state) benchmark::DoNotOptimize(exact_permutation_average(problem, mode(state)));
  label(state);
}
BENCHMARK(BM_ExactAverage)->ArgsProduct({{0, 1}, {4, 5}})->Unit(benchmark::kMillisecond);

void BM_SampledRg(benchmark::State& state) {
  const auto problem = theta_problem(8, 3);
  for (auto _ : state) benchmark::DoNotOptimize(sampled_permutation_rg(problem, 20000, 7, mode(state)));
  label(state);
}
BENCHMARK(BM_SampledRg)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void BM_Ensemble(benchmark::State& state) {
  const auto sub = subdivide(build_graph(3, {{1, 2}, {2, 3}, {3, 1}}), 6);
  for (auto _ : state) benchmark::DoNotOptimize(sample_ensemble(sub, 3, 2000, 7, 1.0, mode(state)));
  label(state);
}
BENCHMARK(BM_Ensemble)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
