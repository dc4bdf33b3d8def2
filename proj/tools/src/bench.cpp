// Copyright 2026 The modeval Authors
// SPDX-License-Identifier: Apache-2.0

#include "modeval/cli/bench.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <thread>
#include <vector>

#if defined(__linux__)
#include <sched.h>
#include <unistd.h>
#endif
#if defined(__x86_64__) || defined(__i386__)
#include <x86intrin.h>
#endif

namespace modeval::cli {

namespace {

double measure_tsc_ghz() {
#if defined(__x86_64__) || defined(__i386__)
  using clock = std::chrono::steady_clock;
  double best = 0.0;
  for (int i = 0; i < 3; ++i) {
    const auto t0 = clock::now();
    const std::uint64_t c0 = __rdtsc();
    std::this_thread::sleep_for(std::chrono::milliseconds(20));
    const std::uint64_t c1 = __rdtsc();
    const auto t1 = clock::now();
    const double ns = std::chrono::duration<double, std::nano>(t1 - t0).count();
    best = std::max(best, static_cast<double>(c1 - c0) / ns);
  }
  return best;
#else
  return 0.0;
#endif
}

std::string cpu_model() {
  std::ifstream in("/proc/cpuinfo");
  std::string line;
  while (std::getline(in, line)) {
    if (line.rfind("model name", 0) == 0) {
      const auto colon = line.find(':');
      if (colon != std::string::npos) {
        std::string model = line.substr(colon + 1);
        model.erase(0, model.find_first_not_of(' '));
        return model;
      }
    }
  }
  return "unknown-cpu";
}

std::string hostname() {
#if defined(__linux__)
  char buf[256] = {};
  if (gethostname(buf, sizeof buf - 1) == 0) return buf;
#endif
  return "unknown-host";
}

// Keeps commas out of the CSV field.
std::string sanitize(std::string s) {
  std::replace(s.begin(), s.end(), ',', ';');
  return s;
}

}  // namespace

bool pin_to_current_core() noexcept {
#if defined(__linux__)
  const int cpu = sched_getcpu();
  if (cpu < 0) return false;
  cpu_set_t set;
  CPU_ZERO(&set);
  CPU_SET(cpu, &set);
  return sched_setaffinity(0, sizeof set, &set) == 0;
#else
  return false;
#endif
}

const HostInfo& host_info() {
  static const HostInfo info = [] {
    HostInfo h;
    h.pinned = pin_to_current_core();
    h.tsc_ghz = measure_tsc_ghz();
    h.host = sanitize(hostname() + "/" + cpu_model());
    return h;
  }();
  return info;
}

double median_ns(std::size_t reps, std::size_t warmup, const std::function<void()>& body,
                 const std::function<void()>& setup) {
  using clock = std::chrono::steady_clock;
  for (std::size_t i = 0; i < warmup; ++i) {
    if (setup) setup();
    body();
  }
  std::vector<double> samples;
  samples.reserve(std::max<std::size_t>(reps, 1));
  for (std::size_t i = 0; i < std::max<std::size_t>(reps, 1); ++i) {
    if (setup) setup();
    const auto t0 = clock::now();
    body();
    const auto t1 = clock::now();
    samples.push_back(std::chrono::duration<double, std::nano>(t1 - t0).count());
  }
  std::sort(samples.begin(), samples.end());
  const std::size_t k = samples.size();
  return k % 2 == 1 ? samples[k / 2] : 0.5 * (samples[k / 2 - 1] + samples[k / 2]);
}

std::string_view bench_csv_header() noexcept {
  return "op,backend,impl,Ti,Td,M,s,n,d,T,len,reps,ns_per_elem,cycles_per_elem,gflops,"
         "speedup,freq_ghz,host";
}

void write_bench_csv(std::ostream& out, const BenchRecord& r) {
  char num[5][32];
  std::snprintf(num[0], sizeof num[0], "%.4f", r.ns_per_elem);
  std::snprintf(num[1], sizeof num[1], "%.4f", r.cycles_per_elem);
  std::snprintf(num[2], sizeof num[2], "%.4f", r.gflops);
  if (r.speedup > 0.0) {
    std::snprintf(num[3], sizeof num[3], "%.3f", r.speedup);
  } else {
    num[3][0] = '\0';
  }
  std::snprintf(num[4], sizeof num[4], "%.3f", r.freq_ghz);
  out << r.op << ',' << r.backend << ',' << r.impl << ',' << r.ti << ',' << r.td << ','
      << r.unroll << ',' << r.s << ',' << r.n << ',' << r.d << ',' << r.T << ',' << r.len << ','
      << r.reps << ',' << num[0] << ',' << num[1] << ',' << num[2] << ',' << num[3] << ','
      << num[4] << ',' << r.host << '\n';
}

void fill_rates(BenchRecord& r, double median_ns, double elems, double flops_per_elem) {
  const HostInfo& h = host_info();
  r.ns_per_elem = elems > 0 ? median_ns / elems : 0.0;
  r.cycles_per_elem = r.ns_per_elem * h.tsc_ghz;
  r.gflops = median_ns > 0 ? elems * flops_per_elem / median_ns : 0.0;
  r.freq_ghz = h.tsc_ghz;
  r.host = h.host;
}

}  // namespace modeval::cli
