#include <benchmark/benchmark.h>

#include "acshock/contraction.hpp"
#include "acshock/dissipation.hpp"

using namespace acshock;

namespace {

const SystemDescriptor& euler() {
  static const SystemDescriptor sys = make_full_euler(1.4);
  return sys;
}

const ShockContext& context() {
  static const ShockContext ctx = [] {
    const auto ie = make_isentropic_euler(1.4);
    return make_shock_context(ie, 1, ie.default_basepoint(), 1e-2, 100.0);
  }();
  return ctx;
}

}  // namespace

static void BM_FluxEval(benchmark::State& state) {
  const auto& sys = euler();
  const Vec u{1.0, 0.3, 2.6};
  for (auto _ : state) benchmark::DoNotOptimize(sys.flux(u));
}
BENCHMARK(BM_FluxEval);

static void BM_Eigenstructure(benchmark::State& state) {
  const auto& sys = euler();
  const Vec u{1.0, 0.3, 2.6};
  for (auto _ : state) benchmark::DoNotOptimize(eigenstructure(sys, u));
}
BENCHMARK(BM_Eigenstructure);

static void BM_RelEntropyKernel(benchmark::State& state) {
  const auto& sys = euler();
  const Vec a{1.0, 0.3, 2.6}, b{1.01, 0.29, 2.61};
  for (auto _ : state) benchmark::DoNotOptimize(rel_entropy(sys, a, b));
}
BENCHMARK(BM_RelEntropyKernel);

static void BM_RelEntropyDirect(benchmark::State& state) {
  auto sys = euler();
  sys.rel_entropy_fn = nullptr;  // difference form
  const Vec a{1.0, 0.3, 2.6}, b{1.01, 0.29, 2.61};
  for (auto _ : state) benchmark::DoNotOptimize(rel_entropy(sys, a, b));
}
BENCHMARK(BM_RelEntropyDirect);

static void BM_TraceShockCurve(benchmark::State& state) {
  const auto ie = make_isentropic_euler(1.4);
  const Vec base = ie.default_basepoint();
  for (auto _ : state)
    benchmark::DoNotOptimize(trace_shock_curve(ie, base, 1, 0.05, 0.05 / 200));
}
BENCHMARK(BM_TraceShockCurve);

static void BM_DMax(benchmark::State& state) {
  const auto& ctx = context();
  Rng rng(5);
  const auto samples = sample_pi(ctx, 32, rng);
  size_t k = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(d_max(ctx, samples[k % samples.size()]));
    ++k;
  }
}
BENCHMARK(BM_DMax);

static void BM_FvStep2000(benchmark::State& state) {
  const auto ie = make_isentropic_euler(1.4);
  FVField f = make_grid(-0.5, 0.5, 2000, 0.45, "rusanov", 2);
  for (int j = 0; j < f.ncells; ++j) {
    const double x = f.x_center(j);
    f.u[j] = Vec{1.0 + 0.05 * std::exp(-x * x / 0.01), 0.0};
  }
  for (auto _ : state) {
    fv_step(ie, f, 1e-6);
    benchmark::ClobberMemory();
  }
}
BENCHMARK(BM_FvStep2000);

static void BM_PseudoDistance2000(benchmark::State& state) {
  const auto& ctx = context();
  FVField f = make_grid(-0.5, 0.5, 2000, 0.45, "rusanov", 2);
  for (int j = 0; j < f.ncells; ++j)
    f.u[j] = f.x_center(j) < 0 ? ctx.u_left : ctx.u_right;
  for (auto _ : state) benchmark::DoNotOptimize(pseudo_distance(ctx, f, 0.0));
}
BENCHMARK(BM_PseudoDistance2000);

BENCHMARK_MAIN();
