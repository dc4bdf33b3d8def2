// Copyright 2026 The modeval Authors
// SPDX-License-Identifier: Apache-2.0

#include "modeval/cli/commands.hpp"

#include <algorithm>
#include <chrono>
#include <fstream>
#include <iostream>
#include <random>
#include <set>

#include "modeval/error.hpp"
#include "modeval/oracle.hpp"

namespace modeval::cli {

namespace {

std::size_t max_degree(const SparsePolynomial& f) {
  std::size_t d = 0;
  for (std::size_t v = 0; v < f.nvars(); ++v) d = std::max<std::size_t>(d, f.degree(v));
  return d;
}

void describe_instance(BenchRecord& r, const MonomialEvals& me, const SparsePolynomial* f,
                       std::size_t T) {
  r.s = me.size();
  r.T = T;
  r.len = me.size();
  if (f != nullptr) {
    r.n = f->nvars();
    r.d = max_degree(*f);
  }
}

const Backend& backend_of(const EvalPlan& plan) { return backend_select(plan.backend); }

}  // namespace

ImageFormat format_for_path(const std::string& path) {
  const auto dot = path.rfind('.');
  if (dot != std::string::npos) {
    const std::string ext = path.substr(dot + 1);
    if (ext == "jsonl" || ext == "json") return ImageFormat::jsonl;
  }
  return ImageFormat::csv;
}

LoadedInstance load_instance(const InstanceOptions& opt) {
  std::optional<PrimeModulus> m;
  std::optional<SparsePolynomial> f;
  std::vector<std::string> warnings;
  if (!opt.poly_path.empty()) {
    ParsedPoly parsed = read_poly_file(opt.poly_path);
    m.emplace(parsed.modulus);
    f.emplace(std::move(parsed.poly));
    warnings = std::move(parsed.warnings);
  } else {
    m.emplace(opt.gen.p);
    f.emplace(generate(opt.gen));
  }
  EvalPoint beta;
  if (!opt.beta.empty()) {
    beta.beta = opt.beta;
    validate_eval_point(beta, f->nvars(), *m);
  } else {
    beta = sample_eval_point(f->nvars(), *m, opt.beta_seed);
  }
  return {*m, std::move(*f), std::move(beta), std::move(warnings)};
}

Kernel parse_kernel(const std::string& text) {
  if (text == "int-scalar") return Kernel::int_scalar;
  if (text == "fp-scalar") return Kernel::fp_scalar;
  if (text == "simd") return Kernel::simd;
  if (text == "blocked") return Kernel::blocked;
  if (text == "noalloc") return Kernel::noalloc;
  throw Error(Errc::invalid_argument, "unknown kernel '" + text + "'");
}

const char* kernel_name(Kernel k) noexcept {
  switch (k) {
    case Kernel::int_scalar:
      return "int-scalar";
    case Kernel::fp_scalar:
      return "fp-scalar";
    case Kernel::simd:
      return "vector";
    case Kernel::blocked:
      return "vector-blocked";
    case Kernel::noalloc:
      return "vector-noalloc";
  }
  return "?";
}

BenchRecord time_kernel(MonomialEvals& me, const PrimeModulus& m, std::size_t T, Kernel kernel,
                        const EvalPlan& plan, std::size_t reps, std::size_t warmup,
                        ImageSet* images) {
  plan.validate();
  const Backend& backend = backend_of(plan);
  ImageSet result;
  auto body = [&] {
    switch (kernel) {
      case Kernel::int_scalar:
        result = eval_scalar(me, m, T, ScalarArith::integer);
        break;
      case Kernel::fp_scalar:
        result = eval_scalar(me, m, T, ScalarArith::floating);
        break;
      case Kernel::simd:
        result = eval_simd(me, m, T, backend);
        break;
      case Kernel::blocked:
        result = eval_blocked(me, m, T, plan);
        break;
      case Kernel::noalloc:
        result = eval_blocked_noalloc(me, m, T, plan.td, plan.unroll, backend);
        break;
    }
  };
  const double ns = median_ns(reps, warmup, body, [&] {
    me.reset();
    result.clear();
  });
  BenchRecord r;
  r.op = "eval";
  r.impl = kernel_name(kernel);
  r.backend = kernel == Kernel::int_scalar || kernel == Kernel::fp_scalar
                  ? "scalar"
                  : std::string(backend.name());
  if (kernel == Kernel::blocked) {
    r.ti = plan.ti;
    r.td = plan.td;
    r.unroll = plan.unroll;
  } else if (kernel == Kernel::noalloc) {
    r.ti = 1;
    r.td = plan.td;
    r.unroll = plan.unroll;
  } else {
    r.ti = r.td = r.unroll = 1;
  }
  r.reps = std::max<std::size_t>(reps, 1);
  describe_instance(r, me, nullptr, T);
  fill_rates(r, ns, static_cast<double>(me.size()) * static_cast<double>(T),
             kFlopsPerMulmod + kFlopsPerAddmod);
  if (images != nullptr) *images = std::move(result);
  return r;
}

int cmd_eval(const EvalOptions& opt, std::ostream& out, std::ostream& err) {
  const LoadedInstance inst = load_instance(opt.instance);
  for (const auto& w : inst.warnings) err << "warning: " << w << '\n';
  if (!check_interpolation_bound(inst.modulus, std::max<std::size_t>(inst.poly.size(), 1))) {
    err << "note: p <= 100 s^2; images are exact but may be unlucky for interpolation\n";
  }
  MonomialEvals me = prepare(inst.poly, inst.beta, inst.modulus);
  ImageSet images;
  BenchRecord r = time_kernel(me, inst.modulus, opt.T, opt.kernel, opt.plan, opt.reps,
                              opt.warmup, &images);
  r.n = inst.poly.nvars();
  r.d = max_degree(inst.poly);

  if (!opt.out_path.empty()) {
    std::ofstream file(opt.out_path);
    if (!file) throw Error(Errc::invalid_argument, "cannot write " + opt.out_path);
    write_images(images, file, opt.format.value_or(format_for_path(opt.out_path)));
  }
  out << bench_csv_header() << '\n';
  write_bench_csv(out, r);

  if (opt.verify_sample > 0 && opt.T > 0) {
    std::mt19937_64 rng(opt.verify_seed);
    std::uniform_int_distribution<std::size_t> pick(1, opt.T);
    std::set<std::size_t> ts;
    while (ts.size() < std::min(opt.verify_sample, opt.T)) ts.insert(pick(rng));
    std::size_t bad = 0;
    for (std::size_t t : ts) {
      const auto want = oracle::naive_evaluate(inst.poly, inst.beta, t, inst.modulus);
      if (want != images[t - 1]) {
        const auto div = first_divergence({want}, {images[t - 1]});
        err << "verify: t=" << t << " differs: " << (div ? div->detail : "?") << '\n';
        ++bad;
      }
    }
    err << "verify: " << ts.size() - bad << "/" << ts.size() << " sampled images match\n";
    if (bad != 0) return kExitMismatch;
  }
  return kExitOk;
}

TuneResult run_tune(const TuneOptions& opt, const LoadedInstance& inst) {
  if (opt.grid.empty()) throw Error(Errc::invalid_argument, "empty tuning grid");
  if (opt.kernel != Kernel::blocked && opt.kernel != Kernel::noalloc) {
    throw Error(Errc::invalid_argument, "tune supports the blocked and noalloc kernels");
  }
  MonomialEvals me = prepare(inst.poly, inst.beta, inst.modulus);
  TuneResult res;
  EvalPlan base_plan{1, 1, 1, opt.backend};
  res.base = time_kernel(me, inst.modulus, opt.T, Kernel::simd, base_plan, opt.reps, opt.warmup);
  res.base.n = inst.poly.nvars();
  res.base.d = max_degree(inst.poly);
  res.base.speedup = 1.0;

  const std::vector<std::size_t> tis =
      opt.kernel == Kernel::noalloc ? std::vector<std::size_t>{1} : opt.grid;
  for (std::size_t ti : tis) {
    for (std::size_t td : opt.grid) {
      for (std::size_t mu : opt.grid) {
        const EvalPlan plan{ti, td, mu, opt.backend};
        BenchRecord r =
            time_kernel(me, inst.modulus, opt.T, opt.kernel, plan, opt.reps, opt.warmup);
        r.n = res.base.n;
        r.d = res.base.d;
        r.speedup = res.base.ns_per_elem / r.ns_per_elem;
        if (ti == 1 && td == 1 && mu == 1) res.unit = res.rows.size();
        res.rows.push_back(std::move(r));
      }
    }
  }
  res.best = static_cast<std::size_t>(
      std::min_element(res.rows.begin(), res.rows.end(),
                       [](const BenchRecord& a, const BenchRecord& b) {
                         return a.ns_per_elem < b.ns_per_elem;
                       }) -
      res.rows.begin());
  return res;
}

int cmd_tune(const TuneOptions& opt, std::ostream& out, std::ostream& err) {
  const LoadedInstance inst = load_instance(opt.instance);
  for (const auto& w : inst.warnings) err << "warning: " << w << '\n';
  const TuneResult res = run_tune(opt, inst);
  out << bench_csv_header() << '\n';
  write_bench_csv(out, res.base);
  for (const auto& r : res.rows) write_bench_csv(out, r);

  const BenchRecord& best = res.rows[res.best];
  char line[256];
  std::snprintf(line, sizeof line,
                "best: (T_i=%zu, T_d=%zu, M=%zu) on %s: %.2f Gflop/s, %.2fx the base vector "
                "kernel (%.2f Gflop/s)\n",
                best.ti, best.td, best.unroll, best.backend.c_str(), best.gflops, best.speedup,
                res.base.gflops);
  err << line;
  if (res.unit) {
    const BenchRecord& unit = res.rows[*res.unit];
    std::snprintf(line, sizeof line, "best vs (1,1,1): %.2fx\n",
                  unit.ns_per_elem / best.ns_per_elem);
    err << line;
  }
  std::snprintf(line, sizeof line,
                "reference (other hardware, not comparable): %.2f Gflop/s AVX2, %.2f Gflop/s "
                "AVX-512\n",
                kReferenceGflopsAvx2, kReferenceGflopsAvx512);
  err << line;
  return kExitOk;
}

int cmd_verify(const VerifyOptions& opt, std::ostream& out, std::ostream& err) {
  const LoadedInstance inst = load_instance(opt.instance);
  for (const auto& w : inst.warnings) err << "warning: " << w << '\n';
  const auto start = std::chrono::steady_clock::now();
  const ImageSet want = oracle::naive_evaluate_all(inst.poly, inst.beta, opt.T, inst.modulus);

  std::size_t checked = 0;
  std::size_t failed = 0;
  auto check = [&](const std::string& label, const ImageSet& got) {
    ++checked;
    if (const auto div = first_divergence(want, got)) {
      ++failed;
      out << "FAIL " << label << ": first divergence at t=" << div->t << ", term "
          << div->position << ": " << div->detail << '\n';
    }
  };

  if (!opt.images_path.empty()) {
    std::ifstream file(opt.images_path);
    if (!file) throw Error(Errc::invalid_argument, "cannot open " + opt.images_path);
    check(opt.images_path,
          read_images(file, opt.format.value_or(format_for_path(opt.images_path)), opt.T));
  } else {
    MonomialEvals me = prepare(inst.poly, inst.beta, inst.modulus);
    const Backend& backend = backend_select(opt.plan.backend);
    const std::string on = std::string(" on ") + std::string(backend.name());
    auto run = [&](const std::string& label, auto&& fn) {
      me.reset();
      check(label, fn());
    };
    run("int-scalar", [&] { return eval_scalar(me, inst.modulus, opt.T); });
    run("fp-scalar",
        [&] { return eval_scalar(me, inst.modulus, opt.T, ScalarArith::floating); });
    run("simd" + on, [&] { return eval_simd(me, inst.modulus, opt.T, backend); });
    std::vector<EvalPlan> plans;
    if (opt.all_plans) {
      for (std::size_t ti : {1, 2, 4, 8}) {
        for (std::size_t td : {1, 2, 4, 8}) {
          for (std::size_t mu : {1, 2, 4, 8}) plans.push_back({ti, td, mu, opt.plan.backend});
        }
      }
      plans.push_back({16, 16, 16, opt.plan.backend});
    } else {
      plans.push_back(opt.plan);
    }
    for (const auto& plan : plans) {
      const std::string shape = "(" + std::to_string(plan.ti) + "," + std::to_string(plan.td) +
                                "," + std::to_string(plan.unroll) + ")";
      run("blocked " + shape + on, [&] { return eval_blocked(me, inst.modulus, opt.T, plan); });
      if (plan.ti == 1 || !opt.all_plans) {
        run("noalloc " + shape + on, [&] {
          return eval_blocked_noalloc(me, inst.modulus, opt.T, plan.td, plan.unroll, backend);
        });
      }
    }
  }
  const double secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  out << (failed == 0 ? "PASS" : "FAIL") << ": " << checked - failed << "/" << checked
      << " image sets match the oracle (s=" << inst.poly.size() << ", T=" << opt.T << ", "
      << secs << " s)\n";
  return failed == 0 ? kExitOk : kExitMismatch;
}

int cmd_gen(const GenOptions& opt, std::ostream& out, std::ostream& err) {
  const SparsePolynomial f = generate(opt.spec);
  const PrimeModulus m(opt.spec.p);
  if (opt.out_path.empty()) {
    write_poly(out, f, m);
  } else {
    write_poly_file(opt.out_path, f, m);
    err << "wrote " << f.size() << " terms to " << opt.out_path << '\n';
  }
  return kExitOk;
}

}  // namespace modeval::cli
