// Copyright 2026 The modeval Authors
// SPDX-License-Identifier: Apache-2.0

#include <benchmark/benchmark.h>

#include "modeval/eval.hpp"
#include "modeval/polyio.hpp"

namespace {

using namespace modeval;

constexpr std::uint64_t kPrime = 1125899906842589ull;
constexpr std::size_t kT = 100;

// s = 50000, n = 6, d = 10: a tenth of the tuning instance so runs stay short.
struct Fixture {
  PrimeModulus m{kPrime};
  SparsePolynomial f = generate({50000, 6, 10, kPrime, 1});
  MonomialEvals me = prepare(f, sample_eval_point(6, m, 2), m);
};

Fixture& fixture() {
  static Fixture fx;
  return fx;
}

void finish(benchmark::State& state, std::size_t s) {
  const double terms = static_cast<double>(state.iterations()) * static_cast<double>(s * kT);
  state.counters["Gflop/s"] = benchmark::Counter(terms * flops_per_term_eval() * 1e-9,
                                                 benchmark::Counter::kIsRate);
}

void BM_EvalScalar(benchmark::State& state) {
  auto& fx = fixture();
  const auto arith = state.range(0) ? ScalarArith::floating : ScalarArith::integer;
  for (auto _ : state) {
    state.PauseTiming();
    fx.me.reset();
    state.ResumeTiming();
    benchmark::DoNotOptimize(eval_scalar(fx.me, fx.m, kT, arith));
  }
  finish(state, fx.me.size());
}

void BM_EvalSimd(benchmark::State& state) {
  auto& fx = fixture();
  for (auto _ : state) {
    state.PauseTiming();
    fx.me.reset();
    state.ResumeTiming();
    benchmark::DoNotOptimize(eval_simd(fx.me, fx.m, kT));
  }
  finish(state, fx.me.size());
}

void BM_EvalBlocked(benchmark::State& state) {
  auto& fx = fixture();
  const EvalPlan plan{static_cast<std::size_t>(state.range(0)),
                      static_cast<std::size_t>(state.range(1)),
                      static_cast<std::size_t>(state.range(2))};
  for (auto _ : state) benchmark::DoNotOptimize(eval_blocked(fx.me, fx.m, kT, plan));
  finish(state, fx.me.size());
}

void BM_EvalNoalloc(benchmark::State& state) {
  auto& fx = fixture();
  for (auto _ : state) {
    state.PauseTiming();
    fx.me.reset();
    state.ResumeTiming();
    benchmark::DoNotOptimize(eval_blocked_noalloc(fx.me, fx.m, kT,
                                                  static_cast<std::size_t>(state.range(0)),
                                                  static_cast<std::size_t>(state.range(1))));
  }
  finish(state, fx.me.size());
}

BENCHMARK(BM_EvalScalar)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_EvalSimd)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_EvalBlocked)
    ->Args({1, 1, 1})
    ->Args({1, 4, 8})
    ->Args({4, 4, 4})
    ->Args({8, 8, 4})
    ->Args({8, 16, 1})
    ->Args({16, 16, 16})
    ->Unit(benchmark::kMillisecond);
BENCHMARK(BM_EvalNoalloc)->Args({4, 8})->Args({16, 4})->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
