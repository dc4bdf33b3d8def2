// Copyright 2026 The modeval Authors
// SPDX-License-Identifier: Apache-2.0

// The modeval subcommands as library functions. Each returns the process
// exit code: 0 success, 1 verification failure, 2 usage or input error.

#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "modeval/cli/bench.hpp"
#include "modeval/eval.hpp"
#include "modeval/polyio.hpp"

namespace modeval::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitMismatch = 1;
inline constexpr int kExitUsage = 2;

/// Best single-core results from the reference study, shown next to ours.
inline constexpr double kReferenceGflopsAvx2 = 15.65;
inline constexpr double kReferenceGflopsAvx512 = 39.11;

// ---- microbench ------------------------------------------------------------

struct MicrobenchOptions {
  std::string op = "all";                  // mul | add | all
  std::vector<std::string> impls{"all"};   // see microbench_impls()
  std::size_t len = 2048;
  std::size_t reps = 11;
  BackendRequest backend = BackendRequest::automatic;  // used by fp-scalar rows
  std::uint64_t p = 1125899906842589ull;
  std::uint64_t seed = 1;
};

/// int-scalar, fp-scalar, fp-scalar-conv, vec-portable, vec-portable-conv,
/// vec-v4, vec-v4-conv, vec-v8, vec-v8-conv.
std::vector<std::string> microbench_impls();

/// One record per (op, impl). Vector rows carry speedup = fp-scalar time /
/// vector time for the same op.
std::vector<BenchRecord> run_microbench(const MicrobenchOptions& opt);

// ---- shared instance options --------------------------------------------------

struct InstanceOptions {
  std::string poly_path;  // empty: generate from gen
  GenSpec gen{2000, 6, 10, 1125899906842589ull, 1};
  std::vector<std::uint64_t> beta;  // empty: sample with beta_seed
  std::uint64_t beta_seed = 1;
};

struct LoadedInstance {
  PrimeModulus modulus;
  SparsePolynomial poly;
  EvalPoint beta;
  std::vector<std::string> warnings;
};

LoadedInstance load_instance(const InstanceOptions& opt);

// ---- eval --------------------------------------------------------------------

enum class Kernel { int_scalar, fp_scalar, simd, blocked, noalloc };

/// int-scalar | fp-scalar | simd | blocked | noalloc
Kernel parse_kernel(const std::string& text);
const char* kernel_name(Kernel k) noexcept;

struct EvalOptions {
  InstanceOptions instance;
  std::size_t T = 10000;
  EvalPlan plan{};
  Kernel kernel = Kernel::blocked;
  std::string out_path;  // images; empty: do not write
  std::optional<ImageFormat> format;  // default from the file extension
  std::size_t verify_sample = 0;
  std::uint64_t verify_seed = 1;
  std::size_t reps = 5;
  std::size_t warmup = 1;
};

/// Runs one kernel and times it.
BenchRecord time_kernel(MonomialEvals& me, const PrimeModulus& m, std::size_t T, Kernel kernel,
                        const EvalPlan& plan, std::size_t reps, std::size_t warmup,
                        ImageSet* images = nullptr);

int cmd_eval(const EvalOptions& opt, std::ostream& out, std::ostream& err);

// ---- tune --------------------------------------------------------------------

struct TuneOptions {
  InstanceOptions instance;
  std::size_t T = 1000;
  std::vector<std::size_t> grid{1, 2, 4, 8, 16};
  BackendRequest backend = BackendRequest::automatic;
  Kernel kernel = Kernel::blocked;  // blocked | noalloc (T_i fixed at 1)
  std::size_t reps = 5;
  std::size_t warmup = 1;
};

struct TuneResult {
  BenchRecord base;                  // eval_simd on the same instance
  std::vector<BenchRecord> rows;     // one per configuration
  std::size_t best = 0;              // index into rows
  std::optional<std::size_t> unit;   // index of (1, 1, 1) if swept
};

TuneResult run_tune(const TuneOptions& opt, const LoadedInstance& inst);
int cmd_tune(const TuneOptions& opt, std::ostream& out, std::ostream& err);

// ---- verify ------------------------------------------------------------------

struct VerifyOptions {
  InstanceOptions instance;
  std::size_t T = 64;
  bool all_plans = false;
  EvalPlan plan{};
  std::string images_path;            // check a file instead of running kernels
  std::optional<ImageFormat> format;  // default from the file extension
};

int cmd_verify(const VerifyOptions& opt, std::ostream& out, std::ostream& err);

// ---- gen ---------------------------------------------------------------------

struct GenOptions {
  GenSpec spec{500000, 6, 10, 1125899906842589ull, 1};
  std::string out_path;  // empty: stdout
};

int cmd_gen(const GenOptions& opt, std::ostream& out, std::ostream& err);

/// Format implied by a path: ".jsonl" or ".json" -> jsonl, otherwise csv.
ImageFormat format_for_path(const std::string& path);

}  // namespace modeval::cli
