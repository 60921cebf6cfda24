// Serial reference against the OpenMP kernels for the per-node frame reduction.

#include <benchmark/benchmark.h>

#include "liesphere/critical_curves.hpp"
#include "liesphere/reconstruction.hpp"

using namespace liesphere;

namespace {

AnalyzeOptions options(Execution e) {
  AnalyzeOptions o;
  o.execution = e;
  return o;
}

const CurvePtr& bent_orbit() {
  static const CurvePtr c = perturbed_orbit(CriticalParams{1.0, 0.5}, 1.0, 0.05, 14);
  return c;
}

void BM_CanonicalNodes(benchmark::State& state, Execution e) {
  const auto grid = uniform_grid(0.0, 1.0, static_cast<int>(state.range(0)));
  const AnalyzeOptions opts = options(e);
  for (auto _ : state) benchmark::DoNotOptimize(canonical_nodes(*bent_orbit(), grid, opts));
  state.SetItemsProcessed(state.iterations() * static_cast<int64_t>(grid.size()));
}

void BM_AnalyzeReconstructed(benchmark::State& state, Execution e) {
  static const ReconstructedCurve rc = reconstruct_curve(
      CurvatureSpec::constants({1.3, -0.4, 0.2, 0.6}, 1.0), GroupElement::identity(), 1000);
  const auto grid = uniform_grid(0.0, 1.0, static_cast<int>(state.range(0)));
  const AnalyzeOptions opts = options(e);
  for (auto _ : state) benchmark::DoNotOptimize(analyze(*rc.curve, grid, opts));
  state.SetItemsProcessed(state.iterations() * static_cast<int64_t>(grid.size()));
}

void BM_ReduceSampled(benchmark::State& state, Execution e) {
  const CriticalOrbit orb =
      critical_orbit(CriticalParams{2.0, 1.0}, GroupElement::identity(), 1.0, static_cast<int>(state.range(0)));
  const ThetaSample th = mc_pullback(orb.frames);
  const AnalyzeOptions opts = options(e);
  for (auto _ : state) benchmark::DoNotOptimize(reduce_to_canonical(orb.frames, th, opts));
  state.SetItemsProcessed(state.iterations() * static_cast<int64_t>(orb.frames.size()));
}

}  // namespace

BENCHMARK_CAPTURE(BM_CanonicalNodes, serial, Execution::Serial)->Arg(1000)->Arg(8000);
BENCHMARK_CAPTURE(BM_CanonicalNodes, openmp, Execution::Parallel)->Arg(1000)->Arg(8000);
BENCHMARK_CAPTURE(BM_AnalyzeReconstructed, serial, Execution::Serial)->Arg(1000)->Arg(8000);
BENCHMARK_CAPTURE(BM_AnalyzeReconstructed, openmp, Execution::Parallel)->Arg(1000)->Arg(8000);
BENCHMARK_CAPTURE(BM_ReduceSampled, serial, Execution::Serial)->Arg(1000)->Arg(8000);
BENCHMARK_CAPTURE(BM_ReduceSampled, openmp, Execution::Parallel)->Arg(1000)->Arg(8000);

BENCHMARK_MAIN();
