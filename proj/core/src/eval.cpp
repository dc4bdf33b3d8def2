// Copyright 2026 The modeval Authors
// SPDX-License-Identifier: Apache-2.0

#include "modeval/eval.hpp"

#include <bit>

#include "modeval/error.hpp"

namespace modeval {

namespace {

bool on_grid(std::size_t v) noexcept { return v >= 1 && v <= 16 && std::has_single_bit(v); }

void check_state(const MonomialEvals& me) {
  if (me.m.size() != me.size() || me.a.size() != me.size() ||
      me.groups.offsets.size() != me.groups.keys.size() + 1 ||
      me.groups.offsets.back() != me.size()) {
    throw Error(Errc::invalid_argument, "inconsistent monomial evaluation state");
  }
}

}  // namespace

void EvalPlan::validate() const {
  if (ti == 0 || td == 0 || unroll == 0) {
    throw Error(Errc::plan_invalid, "plan fields must be at least 1");
  }
}

bool EvalPlan::in_tuning_grid() const noexcept {
  return on_grid(ti) && on_grid(td) && on_grid(unroll);
}

ImageSet eval_scalar(MonomialEvals& me, const PrimeModulus& m, std::size_t T, ScalarArith arith,
                     OpCounts* counts) {
  require_round_to_nearest();
  check_state(me);
  ImageSet images = make_image_set(T);
  ImageSink sink(images, me.groups.keys);
  const auto& off = me.groups.offsets;
  const std::size_t groups = me.groups.size();

  if (arith == ScalarArith::integer) {
    const Carrier ca = me.a.carrier();
    const Carrier cm = me.m.carrier();
    me.a.to_integer();
    me.m.to_integer();
    for (std::size_t t = 0; t < T; ++t) {
      for (std::size_t g = 0; g < groups; ++g) {
        std::uint64_t c = 0;
        for (std::size_t j = off[g]; j < off[g + 1]; ++j) {
          const std::uint64_t v = mulmod_int(me.a.get(j), me.m.get(j), m);
          me.a.set(j, v);
          c = addmod_int(c, v, m);
        }
        sink.add(t, g, c);
      }
    }
    if (ca == Carrier::floating) me.a.to_floating();
    if (cm == Carrier::floating) me.m.to_floating();
  } else {
    FloatingScope scope{&me.a, &me.m};
    double* a = me.a.fp_data();
    const double* mv = me.m.fp_data();
    for (std::size_t t = 0; t < T; ++t) {
      for (std::size_t g = 0; g < groups; ++g) {
        double c = 0.0;
        for (std::size_t j = off[g]; j < off[g + 1]; ++j) {
          a[j] = mulmod_fp(a[j], mv[j], m);
          c = addmod_fp(c, a[j], m);
        }
        sink.add(t, g, static_cast<std::uint64_t>(c));
      }
    }
  }
  if (counts != nullptr) {
    counts->mul += static_cast<std::uint64_t>(me.size()) * T;
    counts->add += static_cast<std::uint64_t>(me.size()) * T;
  }
  return images;
}

ImageSet eval_simd(MonomialEvals& me, const PrimeModulus& m, std::size_t T,
                   const Backend& backend) {
  require_round_to_nearest();
  check_state(me);
  ImageSet images = make_image_set(T);
  ImageSink sink(images, me.groups.keys);
  FloatingScope scope{&me.a, &me.m};
  backend.ops().eval_simd(me.a.fp_data(), me.m.fp_data(), me.groups.offsets, T, m, sink);
  return images;
}

GammaLambdas precompute_gamma_lambdas(MonomialEvals& me, const PrimeModulus& m, std::size_t ti,
                                      const Backend& backend) {
  require_round_to_nearest();
  check_state(me);
  if (ti == 0) throw Error(Errc::plan_invalid, "T_i must be at least 1");
  const auto& ops = backend.ops();
  const std::size_t s = me.size();
  FloatingScope scope{&me.a, &me.m};
  const double* mv = me.m.fp_data();

  GammaLambdas out;
  // gamma = m^ti, left-to-right square-and-multiply in place.
  out.gamma = me.m;
  double* gm = out.gamma.fp_data();
  for (int bit = std::bit_width(ti) - 2; bit >= 0; --bit) {
    ops.mul_arrays(gm, gm, gm, s, m);
    if ((ti >> bit) & 1u) ops.mul_arrays(gm, mv, gm, s, m);
  }

  out.lambdas.reserve(ti);
  for (std::size_t k = 0; k < ti; ++k) {
    FieldArray lam(s);
    lam.to_floating();
    const double* prev = k == 0 ? me.a.fp_data() : out.lambdas.back().fp_data();
    ops.mul_arrays(prev, mv, lam.fp_data(), s, m);
    out.lambdas.push_back(std::move(lam));
  }
  return out;
}

ImageSet eval_blocked(MonomialEvals& me, const PrimeModulus& m, std::size_t T,
                      const EvalPlan& plan) {
  plan.validate();
  require_round_to_nearest();
  check_state(me);
  const Backend& backend = backend_select(plan.backend);
  const auto& ops = backend.ops();

  ImageSet images = make_image_set(T);
  if (T == 0) return images;
  ImageSink sink(images, me.groups.keys);
  const auto& off = me.groups.offsets;

  GammaLambdas gl = precompute_gamma_lambdas(me, m, plan.ti, backend);
  FloatingScope scope{&me.a, &me.m};
  std::vector<double*> lam(plan.ti);
  for (std::size_t k = 0; k < plan.ti; ++k) lam[k] = gl.lambdas[k].fp_data();

  const std::size_t block = plan.ti * plan.td;
  std::size_t first = 0;
  for (; first + block <= T; first += block) {
    ops.blocked(lam.data(), gl.gamma.fp_data(), off, m, {plan.ti, plan.td, plan.unroll}, sink,
                first);
  }
  const std::size_t rest = T - first;
  if (const std::size_t nd1 = rest / plan.ti; nd1 != 0) {
    ops.blocked(lam.data(), gl.gamma.fp_data(), off, m, {plan.ti, nd1, plan.unroll}, sink,
                first);
    first += nd1 * plan.ti;
  }
  if (const std::size_t nd2 = rest % plan.ti; nd2 != 0) {
    // Lambda_0 now holds a * m^(first + 1); step it by m alone.
    ops.blocked(lam.data(), me.m.fp_data(), off, m, {1, nd2, plan.unroll}, sink, first);
  }
  return images;
}

ImageSet eval_blocked_noalloc(MonomialEvals& me, const PrimeModulus& m, std::size_t T,
                              std::size_t td, std::size_t unroll, const Backend& backend) {
  if (td == 0 || unroll == 0) throw Error(Errc::plan_invalid, "T_d and M must be at least 1");
  require_round_to_nearest();
  check_state(me);
  ImageSet images = make_image_set(T);
  ImageSink sink(images, me.groups.keys);
  FloatingScope scope{&me.a, &me.m};
  const auto& ops = backend.ops();
  std::size_t first = 0;
  for (; first + td <= T; first += td) {
    ops.noalloc(me.a.fp_data(), me.m.fp_data(), me.groups.offsets, m, td, unroll, sink, first);
  }
  if (first < T) {
    ops.noalloc(me.a.fp_data(), me.m.fp_data(), me.groups.offsets, m, T - first, unroll, sink,
                first);
  }
  return images;
}

}  // namespace modeval
