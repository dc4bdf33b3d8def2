// Copyright 2026 The modeval Authors
// SPDX-License-Identifier: Apache-2.0

#include <benchmark/benchmark.h>

#include <random>
#include <vector>

#include "modeval/prime_field.hpp"
#include "modeval/simd/backend.hpp"

namespace {

using namespace modeval;

constexpr std::uint64_t kPrime = 1125899906842589ull;

struct Operands {
  std::vector<double> x, y, out;
  explicit Operands(std::size_t n) : x(n), y(n), out(n) {
    std::mt19937_64 rng(1);
    std::uniform_int_distribution<std::uint64_t> dist(0, kPrime - 1);
    for (std::size_t i = 0; i < n; ++i) {
      x[i] = static_cast<double>(dist(rng));
      y[i] = static_cast<double>(dist(rng));
    }
  }
};

void set_counters(benchmark::State& state, double flops_per_elem) {
  const auto elems = static_cast<double>(state.iterations() * state.range(0));
  state.SetItemsProcessed(static_cast<std::int64_t>(elems));
  state.counters["Gflop/s"] =
      benchmark::Counter(elems * flops_per_elem * 1e-9, benchmark::Counter::kIsRate);
}

void BM_ScalarMulmodFp(benchmark::State& state) {
  const PrimeModulus m(kPrime);
  Operands v(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) {
    for (std::size_t i = 0; i < v.x.size(); ++i) v.out[i] = mulmod_fp(v.x[i], v.y[i], m);
    benchmark::DoNotOptimize(v.out.data());
    benchmark::ClobberMemory();
  }
  set_counters(state, 9);
}

void BM_ScalarMulmodInt(benchmark::State& state) {
  const PrimeModulus m(kPrime);
  Operands v(static_cast<std::size_t>(state.range(0)));
  std::vector<std::uint64_t> x(v.x.begin(), v.x.end()), y(v.y.begin(), v.y.end()), out(x.size());
  for (auto _ : state) {
    for (std::size_t i = 0; i < x.size(); ++i) out[i] = mulmod_int(x[i], y[i], m);
    benchmark::DoNotOptimize(out.data());
    benchmark::ClobberMemory();
  }
  set_counters(state, 0);
}

void BM_ScalarAddmodFp(benchmark::State& state) {
  const PrimeModulus m(kPrime);
  Operands v(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) {
    for (std::size_t i = 0; i < v.x.size(); ++i) v.out[i] = addmod_fp(v.x[i], v.y[i], m);
    benchmark::DoNotOptimize(v.out.data());
    benchmark::ClobberMemory();
  }
  set_counters(state, 2);
}

void run_vector(benchmark::State& state, BackendKind kind, bool mul) {
  if (!backend_available(kind)) {
    state.SkipWithError("backend not available");
    return;
  }
  const Backend& b = backend_for(kind);
  const PrimeModulus m(kPrime);
  Operands v(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) {
    if (mul) {
      b.mulmod_arrays(v.x, v.y, v.out, m);
    } else {
      b.addmod_arrays(v.x, v.y, v.out, m);
    }
    benchmark::DoNotOptimize(v.out.data());
    benchmark::ClobberMemory();
  }
  set_counters(state, mul ? 9 : 2);
}

void BM_VectorMulmod(benchmark::State& state, BackendKind kind) { run_vector(state, kind, true); }
void BM_VectorAddmod(benchmark::State& state, BackendKind kind) { run_vector(state, kind, false); }

BENCHMARK(BM_ScalarMulmodFp)->Arg(2048);
BENCHMARK(BM_ScalarMulmodInt)->Arg(2048);
BENCHMARK(BM_ScalarAddmodFp)->Arg(2048);
BENCHMARK_CAPTURE(BM_VectorMulmod, portable, BackendKind::portable)->Arg(2048);
BENCHMARK_CAPTURE(BM_VectorMulmod, v4, BackendKind::v4)->Arg(2048);
BENCHMARK_CAPTURE(BM_VectorMulmod, v8, BackendKind::v8)->Arg(2048);
BENCHMARK_CAPTURE(BM_VectorAddmod, portable, BackendKind::portable)->Arg(2048);
BENCHMARK_CAPTURE(BM_VectorAddmod, v4, BackendKind::v4)->Arg(2048);
BENCHMARK_CAPTURE(BM_VectorAddmod, v8, BackendKind::v8)->Arg(2048);

}  // namespace

BENCHMARK_MAIN();
