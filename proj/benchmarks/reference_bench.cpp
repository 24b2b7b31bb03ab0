#include <benchmark/benchmark.h>

#include "kevo/evolve/feedback.hpp"
#include "kevo/roofline/roofline.hpp"
#include "kevo/taskbench/input.hpp"
#include "kevo/taskbench/reference.hpp"
#include "kevo/taskbench/registry.hpp"

using namespace kevo;
using taskbench::Profile;
using taskbench::TaskId;

namespace {

// Reference implementation at the smallest scored size; the counter is the
// achieved rate under the task's work model (GB/s or GFLOPS).
void BM_Reference(benchmark::State& state, TaskId id) {
  const auto task = taskbench::make_task(id, Profile::desk);
  const auto& size = task.in_dist[0];
  const auto inputs = taskbench::generate_input(task, size, 1);
  for (auto _ : state) {
    auto out = taskbench::reference_outputs(task, size, inputs, 1);
    benchmark::DoNotOptimize(out);
  }
  state.counters["work_per_s"] = benchmark::Counter(roofline::work_model(id).work(task, size),
                                                    benchmark::Counter::kIsIterationInvariantRate);
  state.SetLabel(size.label());
}

void BM_InDistScore(benchmark::State& state) {
  const std::vector<roofline::GatedFraction> g{{true, 0.013}, {true, 0.21}, {true, 0.77}};
  for (auto _ : state) benchmark::DoNotOptimize(roofline::in_dist_score(g));
}

void BM_FeedbackSerialize(benchmark::State& state) {
  const std::string source(static_cast<std::size_t>(state.range(0)), 'x');
  evolve::FeedbackPacket p;
  p.previous_source = source;
  p.incumbent_source = source;
  p.previous_result = evolve::EvalResult::scored(0.1, {{"N=8", 1e-6, 1e-3, 1e-3, 2e9, "GB/s", 0.01},
                                                      {"N=16", 1e-6, 1e-3, 2e-3, 2e9, "GB/s", 0.01},
                                                      {"N=32", 1e-6, 1e-3, 4e-3, 2e9, "GB/s", 0.01}});
  for (int k = 0; k < 5; ++k) p.history.push_back({k, "abc", evolve::EvalKind::scored, 0.1, false});
  for (auto _ : state) benchmark::DoNotOptimize(p.serialize());
  state.SetBytesProcessed(state.iterations() * 2 * state.range(0));
}

}  // namespace

BENCHMARK_CAPTURE(BM_Reference, saxpy, TaskId::saxpy)->Unit(benchmark::kMicrosecond);
BENCHMARK_CAPTURE(BM_Reference, heat2d, TaskId::heat2d)->Unit(benchmark::kMicrosecond);
BENCHMARK_CAPTURE(BM_Reference, wave3d, TaskId::wave3d)->Unit(benchmark::kMicrosecond);
BENCHMARK_CAPTURE(BM_Reference, nbody, TaskId::nbody)->Unit(benchmark::kMicrosecond);
BENCHMARK_CAPTURE(BM_Reference, lbm, TaskId::lbm)->Unit(benchmark::kMicrosecond);
BENCHMARK_CAPTURE(BM_Reference, ising, TaskId::ising)->Unit(benchmark::kMicrosecond);
BENCHMARK_CAPTURE(BM_Reference, lj, TaskId::lj)->Unit(benchmark::kMicrosecond);
BENCHMARK_CAPTURE(BM_Reference, gradshaf, TaskId::gradshaf)->Unit(benchmark::kMicrosecond);
BENCHMARK_CAPTURE(BM_Reference, fft3d, TaskId::fft3d)->Unit(benchmark::kMicrosecond);
BENCHMARK_CAPTURE(BM_Reference, hmc, TaskId::hmc)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_InDistScore);
BENCHMARK(BM_FeedbackSerialize)->Arg(1 << 10)->Arg(1 << 14);

BENCHMARK_MAIN();
