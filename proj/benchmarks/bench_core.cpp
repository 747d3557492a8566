#include <benchmark/benchmark.h>

#include "fgf/mercer.hpp"
#include "fgf/rkhs.hpp"
#include "fgf/sampling.hpp"

namespace {

using namespace fgf;

void BM_Decompose(benchmark::State& state) {
  const Grid g(1, static_cast<std::size_t>(state.range(0)));
  const auto model = CovarianceModel::fractional_brownian_sheet({0.7});
  const Eigen::MatrixXd r = gram(model, g);
  for (auto _ : state) benchmark::DoNotOptimize(decompose(r, g).eigenvalues.data());
}
BENCHMARK(BM_Decompose)->RangeMultiplier(2)->Range(64, 512)->Unit(benchmark::kMillisecond);

void BM_SquareRootKernel(benchmark::State& state) {
  const Grid g(1, static_cast<std::size_t>(state.range(0)));
  const auto d = decompose(CovarianceModel::brownian_sheet(1), g);
  for (auto _ : state) benchmark::DoNotOptimize(square_root_kernel(d).values.data());
}
BENCHMARK(BM_SquareRootKernel)->RangeMultiplier(2)->Range(64, 512)->Unit(benchmark::kMillisecond);

void BM_SampleSeries(benchmark::State& state) {
  const Grid g(2, 16);
  const auto k = square_root_kernel(decompose(CovarianceModel::brownian_sheet(2), g));
  const auto basis = make_basis(BasisKind::haar, g);
  const auto count = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(sample_series(k, basis, basis.count(), count, 1).data.data());
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_SampleSeries)->Arg(1000)->Arg(10000)->Unit(benchmark::kMillisecond);

void BM_RkhsProject(benchmark::State& state) {
  const Grid g(1, 128);
  const auto model = CovarianceModel::brownian_sheet(1);
  const RkhsSpace space(square_root_kernel(decompose(model, g)));
  const Eigen::VectorXd f = gram(model, g).col(40);
  for (auto _ : state) benchmark::DoNotOptimize(space.project(f).residual);
}
BENCHMARK(BM_RkhsProject);

}  // namespace

BENCHMARK_MAIN();
