// Copyright 2026 The modeval Authors
// SPDX-License-Identifier: Apache-2.0

// Timing harness and the CSV record shared by every benchmark subcommand.

#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <string>
#include <string_view>

namespace modeval::cli {

/// Flop credited per modular operation.
inline constexpr double kFlopsPerMulmod = 9.0;
inline constexpr double kFlopsPerAddmod = 2.0;

struct HostInfo {
  double tsc_ghz = 0.0;  // measured reference-cycle frequency
  std::string host;      // "<hostname>/<cpu model>"
  bool pinned = false;
};

/// Pins the process to the core it is running on. Returns false where the
/// platform does not allow it.
bool pin_to_current_core() noexcept;

/// Measured once per process.
const HostInfo& host_info();

/// Median wall time in nanoseconds of `reps` calls of `body`, after `warmup`
/// untimed calls. `setup` runs untimed before every call.
double median_ns(std::size_t reps, std::size_t warmup, const std::function<void()>& body,
                 const std::function<void()>& setup = {});

struct BenchRecord {
  std::string op;       // mul | add | eval
  std::string backend;  // portable | v4 | v8 | scalar
  std::string impl;     // int-scalar | fp-scalar | fp-scalar-conv | vector | vector-conv | ...
  std::size_t ti = 0;
  std::size_t td = 0;
  std::size_t unroll = 0;
  std::size_t s = 0;
  std::size_t n = 0;
  std::size_t d = 0;
  std::size_t T = 0;
  std::size_t len = 0;
  std::size_t reps = 0;
  double ns_per_elem = 0.0;
  double cycles_per_elem = 0.0;
  double gflops = 0.0;
  double speedup = 0.0;  // 0 when not applicable
  double freq_ghz = 0.0;
  std::string host;
};

std::string_view bench_csv_header() noexcept;
void write_bench_csv(std::ostream& out, const BenchRecord& r);

/// Fills ns/cycles/gflops/freq/host from a median time covering `elems`
/// elements worth `flops_per_elem` flop each.
void fill_rates(BenchRecord& r, double median_ns, double elems, double flops_per_elem);

}  // namespace modeval::cli
