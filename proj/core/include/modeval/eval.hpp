// Copyright 2026 The modeval Authors
// SPDX-License-Identifier: Apache-2.0

// Evaluation kernels producing the bivariate images
//   b_t(x1, x2) = f(x1, x2, beta_3^t, ..., beta_n^t),  t = 1..T.
//
// All kernels return identical image sets. They differ in how the s x T
// Hadamard products a_i * m_i^t are scheduled.

#pragma once

#include <cstddef>
#include <vector>

#include "modeval/field_array.hpp"
#include "modeval/image.hpp"
#include "modeval/precompute.hpp"
#include "modeval/prime_field.hpp"
#include "modeval/simd/backend.hpp"

namespace modeval {

enum class ScalarArith { integer, floating };

/// (T_i, T_d, M): independent chains, dependent steps per pass, and the
/// unroll factor over consecutive vectors.
struct EvalPlan {
  std::size_t ti = 1;
  std::size_t td = 1;
  std::size_t unroll = 1;
  BackendRequest backend = BackendRequest::automatic;

  /// Throws Error(plan_invalid) if any of ti, td, unroll is zero.
  void validate() const;
  /// Every field in {1, 2, 4, 8, 16}; such plans run fully unrolled code.
  bool in_tuning_grid() const noexcept;

  friend bool operator==(const EvalPlan&, const EvalPlan&) = default;
};

/// One modular multiply and one add per term and evaluation. Leaves
/// me.a = a * m^T. The integer variant uses the division-free integer
/// reduction; the floating one uses the FMA reduction.
ImageSet eval_scalar(MonomialEvals& me, const PrimeModulus& m, std::size_t T,
                     ScalarArith arith = ScalarArith::integer, OpCounts* counts = nullptr);

/// Vectorized eval_scalar. Leaves me.a = a * m^T.
ImageSet eval_simd(MonomialEvals& me, const PrimeModulus& m, std::size_t T,
                   const Backend& backend = backend_select());

/// gamma[i] = m_i^ti and lambdas[k][i] = a_i * m_i^(k+1), k < ti, in the
/// floating carrier. Allocates exactly ti + 1 arrays of size s.
struct GammaLambdas {
  FieldArray gamma;
  std::vector<FieldArray> lambdas;
};

GammaLambdas precompute_gamma_lambdas(MonomialEvals& me, const PrimeModulus& m, std::size_t ti,
                                      const Backend& backend = backend_select());

/// ti independent chains advanced td steps per pass. Leaves me.a unchanged.
ImageSet eval_blocked(MonomialEvals& me, const PrimeModulus& m, std::size_t T,
                      const EvalPlan& plan);

/// td dependent steps per pass, in place on me.a, with no extra arrays.
/// Leaves me.a = a * m^T.
ImageSet eval_blocked_noalloc(MonomialEvals& me, const PrimeModulus& m, std::size_t T,
                              std::size_t td, std::size_t unroll = 1,
                              const Backend& backend = backend_select());

/// Number of double-precision flops credited to one evaluation pass over s
/// terms: one mulmod (9) and one addmod (2) per term.
constexpr double flops_per_term_eval() noexcept { return 11.0; }

}  // namespace modeval
