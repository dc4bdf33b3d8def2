// Copyright 2026 The modeval Authors
// SPDX-License-Identifier: Apache-2.0

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

#include "modeval/cli/commands.hpp"
#include "modeval/error.hpp"

namespace {

using namespace modeval;
using namespace modeval::cli;

std::vector<std::uint64_t> parse_list(const std::string& text, const char* what) {
  std::vector<std::uint64_t> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::size_t used = 0;
    std::uint64_t v = 0;
    try {
      v = std::stoull(item, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != item.size()) {
      throw Error(Errc::invalid_argument, std::string("bad ") + what + " list '" + text + "'");
    }
    out.push_back(v);
  }
  return out;
}

EvalPlan parse_plan(const std::string& text, const std::string& backend) {
  const auto v = parse_list(text, "plan");
  if (v.size() != 3) throw Error(Errc::invalid_argument, "--plan takes Ti,Td,M");
  EvalPlan plan{v[0], v[1], v[2], parse_backend_request(backend)};
  plan.validate();
  return plan;
}

struct InstanceFlags {
  std::string poly;
  std::size_t s = 2000;
  std::size_t n = 6;
  std::uint32_t d = 10;
  std::uint64_t p = 1125899906842589ull;
  std::uint64_t seed = 1;
  std::string beta;
  std::uint64_t beta_seed = 1;

  void attach(CLI::App* app) {
    app->add_option("--poly", poly, "Polynomial file (MODEVAL-POLY v1)");
    app->add_option("--s", s, "Generated instance: terms")->capture_default_str();
    app->add_option("--n", n, "Generated instance: variables")->capture_default_str();
    app->add_option("--d", d, "Generated instance: max degree")->capture_default_str();
    app->add_option("--p", p, "Generated instance: prime")->capture_default_str();
    app->add_option("--seed", seed, "Generated instance: seed")->capture_default_str();
    app->add_option("--beta", beta, "Evaluation point beta_3,...,beta_n");
    app->add_option("--beta-seed", beta_seed, "Seed for a random beta")->capture_default_str();
  }

  InstanceOptions get() const {
    InstanceOptions o;
    o.poly_path = poly;
    o.gen = GenSpec{s, n, d, p, seed};
    if (!beta.empty()) o.beta = parse_list(beta, "beta");
    o.beta_seed = beta_seed;
    return o;
  }
};

std::optional<ImageFormat> format_option(const std::string& text) {
  if (text.empty()) return std::nullopt;
  return parse_image_format(text);
}

int run(int argc, char** argv) {
  CLI::App app{"modeval: SIMD evaluation of sparse polynomials over F_p"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "modeval 0.1.0");

  // microbench
  auto* micro = app.add_subcommand("microbench", "Element-wise mulmod/addmod timings");
  MicrobenchOptions mopt;
  std::string micro_impls = "all";
  std::string micro_backend = "auto";
  std::string micro_out;
  micro->add_option("--op", mopt.op, "mul | add | all")->capture_default_str();
  micro->add_option("--impl", micro_impls, "Comma list or 'all'")->capture_default_str();
  micro->add_option("--len", mopt.len, "Vector length")->capture_default_str();
  micro->add_option("--reps", mopt.reps, "Timed repetitions")->capture_default_str();
  micro->add_option("--p", mopt.p, "Prime modulus")->capture_default_str();
  micro->add_option("--backend", micro_backend, "Backend for the scalar FP rows")
      ->capture_default_str();
  micro->add_option("--out", micro_out, "CSV file (default stdout)");

  // eval
  auto* eval = app.add_subcommand("eval", "Evaluate T images and time the kernel");
  EvalOptions eopt;
  InstanceFlags eval_inst;
  std::string eval_plan = "8,8,4";
  std::string eval_backend = "auto";
  std::string eval_kernel = "blocked";
  std::string eval_format;
  eval_inst.attach(eval);
  eval->add_option("--T", eopt.T, "Number of images")->capture_default_str();
  eval->add_option("--plan", eval_plan, "Ti,Td,M")->capture_default_str();
  eval->add_option("--backend", eval_backend, "auto | portable | v4 | v8")->capture_default_str();
  eval->add_option("--kernel", eval_kernel, "int-scalar | fp-scalar | simd | blocked | noalloc")
      ->capture_default_str();
  eval->add_option("--out", eopt.out_path, "Write images to this file");
  eval->add_option("--format", eval_format, "csv | jsonl (default from --out extension)");
  eval->add_option("--verify-sample", eopt.verify_sample, "Check k random t against the oracle");
  eval->add_option("--reps", eopt.reps, "Timed repetitions")->capture_default_str();
  eval->add_option("--warmup", eopt.warmup, "Untimed warm-up runs")->capture_default_str();

  // tune
  auto* tune = app.add_subcommand("tune", "Sweep (T_i, T_d, M) over a grid");
  TuneOptions topt;
  InstanceFlags tune_inst;
  std::string tune_grid = "1,2,4,8,16";
  std::string tune_backend = "auto";
  std::string tune_kernel = "blocked";
  std::string tune_out;
  tune_inst.attach(tune);
  tune->add_option("--T", topt.T, "Number of images")->capture_default_str();
  tune->add_option("--grid", tune_grid, "Values for each of T_i, T_d, M")->capture_default_str();
  tune->add_option("--backend", tune_backend, "auto | portable | v4 | v8")->capture_default_str();
  tune->add_option("--kernel", tune_kernel, "blocked | noalloc")->capture_default_str();
  tune->add_option("--reps", topt.reps, "Timed repetitions")->capture_default_str();
  tune->add_option("--warmup", topt.warmup, "Untimed warm-up runs")->capture_default_str();
  tune->add_option("--out", tune_out, "CSV file (default stdout)");

  // verify
  auto* verify = app.add_subcommand("verify", "Compare kernels or an image file with the oracle");
  VerifyOptions vopt;
  InstanceFlags verify_inst;
  std::string verify_plan = "8,8,4";
  std::string verify_backend = "auto";
  std::string verify_format;
  verify_inst.attach(verify);
  verify->add_option("--T", vopt.T, "Number of images")->capture_default_str();
  verify->add_flag("--all-plans", vopt.all_plans, "Every plan in {1,2,4,8}^3 plus (16,16,16)");
  verify->add_option("--plan", verify_plan, "Ti,Td,M when not sweeping")->capture_default_str();
  verify->add_option("--backend", verify_backend, "auto | portable | v4 | v8")
      ->capture_default_str();
  verify->add_option("--images", vopt.images_path, "Image file to check instead");
  verify->add_option("--format", verify_format, "csv | jsonl (default from extension)");

  // gen
  auto* gen = app.add_subcommand("gen", "Generate a random polynomial file");
  GenOptions gopt;
  gen->add_option("--s", gopt.spec.s, "Terms")->capture_default_str();
  gen->add_option("--n", gopt.spec.n, "Variables")->capture_default_str();
  gen->add_option("--d", gopt.spec.d, "Max degree per variable")->capture_default_str();
  gen->add_option("--p", gopt.spec.p, "Prime")->capture_default_str();
  gen->add_option("--seed", gopt.spec.seed, "Seed")->capture_default_str();
  gen->add_option("--out", gopt.out_path, "Output file (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  auto with_output = [](const std::string& path, auto&& fn) {
    if (path.empty()) return fn(std::cout);
    std::ofstream file(path);
    if (!file) throw Error(Errc::invalid_argument, "cannot write " + path);
    return fn(file);
  };

  try {
    host_info();  // pins the process and measures the TSC once
    if (*micro) {
      mopt.backend = parse_backend_request(micro_backend);
      mopt.impls.clear();
      std::stringstream ss(micro_impls);
      for (std::string item; std::getline(ss, item, ',');) mopt.impls.push_back(item);
      const auto records = run_microbench(mopt);
      return with_output(micro_out, [&](std::ostream& out) {
        out << bench_csv_header() << '\n';
        for (const auto& r : records) write_bench_csv(out, r);
        return kExitOk;
      });
    }
    if (*eval) {
      eopt.instance = eval_inst.get();
      eopt.plan = parse_plan(eval_plan, eval_backend);
      eopt.kernel = parse_kernel(eval_kernel);
      eopt.format = format_option(eval_format);
      return cmd_eval(eopt, std::cout, std::cerr);
    }
    if (*tune) {
      topt.instance = tune_inst.get();
      topt.backend = parse_backend_request(tune_backend);
      topt.kernel = parse_kernel(tune_kernel);
      topt.grid.clear();
      for (auto v : parse_list(tune_grid, "grid")) {
        if (v == 0) throw Error(Errc::plan_invalid, "grid values must be at least 1");
        topt.grid.push_back(v);
      }
      return with_output(tune_out,
                         [&](std::ostream& out) { return cmd_tune(topt, out, std::cerr); });
    }
    if (*verify) {
      vopt.instance = verify_inst.get();
      vopt.plan = parse_plan(verify_plan, verify_backend);
      vopt.format = format_option(verify_format);
      return cmd_verify(vopt, std::cout, std::cerr);
    }
    if (*gen) return cmd_gen(gopt, std::cout, std::cerr);
  } catch (const Error& e) {
    std::cerr << "error [" << errc_name(e.code()) << "]: " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitUsage;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  }
}
