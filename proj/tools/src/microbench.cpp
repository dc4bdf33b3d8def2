// Copyright 2026 The modeval Authors
// SPDX-License-Identifier: Apache-2.0

#include <algorithm>
#include <map>
#include <random>

#include "modeval/cli/commands.hpp"
#include "modeval/error.hpp"

namespace modeval::cli {

namespace {

#if defined(__GNUC__) && !defined(__clang__)
#define MODEVAL_NO_AUTOVEC __attribute__((optimize("no-tree-vectorize")))
#else
#define MODEVAL_NO_AUTOVEC
#endif

MODEVAL_NO_AUTOVEC void int_mul(const std::uint64_t* x, const std::uint64_t* y,
                                std::uint64_t* out, std::size_t n, const PrimeModulus& m) {
  for (std::size_t i = 0; i < n; ++i) out[i] = mulmod_int(x[i], y[i], m);
}

MODEVAL_NO_AUTOVEC void int_add(const std::uint64_t* x, const std::uint64_t* y,
                                std::uint64_t* out, std::size_t n, const PrimeModulus& m) {
  for (std::size_t i = 0; i < n; ++i) out[i] = addmod_int(x[i], y[i], m);
}

struct Buffers {
  std::vector<std::uint64_t> xi, yi, oi;
  std::vector<double> xf, yf, of;
};

// Repeats each timed sample until it covers roughly 100 microseconds.
std::size_t passes_for(std::size_t len) {
  return std::max<std::size_t>(1, (100000 + len - 1) / std::max<std::size_t>(len, 1));
}

bool is_conv(const std::string& impl) {
  return impl.size() > 5 && impl.compare(impl.size() - 5, 5, "-conv") == 0;
}

// "vec-<kind>[-conv]" -> kind
BackendKind vector_kind(const std::string& impl) {
  const std::string kind = impl.substr(4, impl.size() - 4 - (is_conv(impl) ? 5 : 0));
  if (kind == "v4") return BackendKind::v4;
  if (kind == "v8") return BackendKind::v8;
  return BackendKind::portable;
}

}  // namespace

std::vector<std::string> microbench_impls() {
  return {"int-scalar", "fp-scalar",    "fp-scalar-conv", "vec-portable", "vec-portable-conv",
          "vec-v4",     "vec-v4-conv",  "vec-v8",         "vec-v8-conv"};
}

std::vector<BenchRecord> run_microbench(const MicrobenchOptions& opt) {
  if (opt.op != "mul" && opt.op != "add" && opt.op != "all") {
    throw Error(Errc::invalid_argument, "--op must be mul, add or all");
  }
  if (opt.len == 0) throw Error(Errc::invalid_argument, "--len must be at least 1");
  const auto known = microbench_impls();
  std::vector<std::string> impls;
  const bool all = std::find(opt.impls.begin(), opt.impls.end(), "all") != opt.impls.end();
  for (const auto& name : all ? known : opt.impls) {
    if (std::find(known.begin(), known.end(), name) == known.end()) {
      throw Error(Errc::invalid_argument, "unknown implementation '" + name + "'");
    }
    impls.push_back(name);
  }

  const PrimeModulus m(opt.p);
  const Backend& scalar_host = backend_select(opt.backend);
  Buffers b;
  std::mt19937_64 rng(opt.seed);
  std::uniform_int_distribution<std::uint64_t> el(0, m.value() - 1);
  for (std::size_t i = 0; i < opt.len; ++i) {
    b.xi.push_back(el(rng));
    b.yi.push_back(el(rng));
  }
  b.oi.resize(opt.len);
  b.xf.assign(b.xi.begin(), b.xi.end());
  b.yf.assign(b.yi.begin(), b.yi.end());
  b.of.resize(opt.len);
  const std::size_t passes = passes_for(opt.len);

  std::vector<BenchRecord> out;
  for (const std::string op : {"mul", "add"}) {
    if (opt.op != "all" && opt.op != op) continue;
    const bool mul = op == "mul";
    const double flops = mul ? kFlopsPerMulmod : kFlopsPerAddmod;

    auto time_int = [&](auto kernel) {
      return median_ns(opt.reps, 1, [&] {
        for (std::size_t k = 0; k < passes; ++k) {
          kernel(b.xi.data(), b.yi.data(), b.oi.data(), opt.len, m);
        }
      });
    };
    auto time_fp = [&](auto kernel) {
      return median_ns(opt.reps, 1, [&] {
        for (std::size_t k = 0; k < passes; ++k) {
          kernel(b.xf.data(), b.yf.data(), b.of.data(), opt.len, m);
        }
      });
    };

    auto measure = [&](const std::string& impl, std::string& backend_name) -> double {
      const auto& host_ops = scalar_host.ops();
      if (impl == "int-scalar") {
        backend_name = "scalar";
        return mul ? time_int(int_mul) : time_int(int_add);
      }
      if (impl == "fp-scalar") {
        backend_name = std::string(scalar_host.name());
        return time_fp(mul ? host_ops.scalar_mul_arrays : host_ops.scalar_add_arrays);
      }
      if (impl == "fp-scalar-conv") {
        backend_name = std::string(scalar_host.name());
        return time_int(mul ? host_ops.scalar_mul_arrays_conv : host_ops.scalar_add_arrays_conv);
      }
      const bool conv = is_conv(impl);
      const Backend& vb = backend_for(vector_kind(impl));
      backend_name = std::string(vb.name());
      const auto& ops = vb.ops();
      if (conv) return time_int(mul ? ops.mul_arrays_conv : ops.add_arrays_conv);
      return time_fp(mul ? ops.mul_arrays : ops.add_arrays);
    };

    std::string ignored;
    const double ref_plain = measure("fp-scalar", ignored);
    const double ref_conv = measure("fp-scalar-conv", ignored);
    for (const auto& impl : impls) {
      // "all" quietly skips vector backends this host cannot run; explicit
      // requests fail in backend_for instead.
      if (all && impl.rfind("vec-", 0) == 0 && !backend_available(vector_kind(impl))) continue;
      BenchRecord r;
      r.op = op;
      double ns = 0.0;
      if (impl == "fp-scalar" || impl == "fp-scalar-conv") {
        r.backend = std::string(scalar_host.name());
        ns = impl == "fp-scalar" ? ref_plain : ref_conv;
      } else {
        ns = measure(impl, r.backend);
      }
      const bool conv = is_conv(impl);
      if (impl.rfind("vec-", 0) == 0) {
        r.impl = conv ? "vector-conv" : "vector";
      } else {
        r.impl = impl;
      }
      r.len = opt.len;
      r.reps = opt.reps;
      fill_rates(r, ns, static_cast<double>(opt.len * passes), flops);
      if (impl != "int-scalar") r.speedup = (conv ? ref_conv : ref_plain) / ns;
      out.push_back(std::move(r));
    }
  }
  return out;
}

}  // namespace modeval::cli
