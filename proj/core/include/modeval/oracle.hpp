// Copyright 2026 The modeval Authors
// SPDX-License-Identifier: Apache-2.0

// Slow reference implementations on arbitrary-precision integers. Nothing
// here shares code with the evaluation kernels or the modular reductions.

#pragma once

#include <cstddef>
#include <cstdint>

#include "modeval/image.hpp"
#include "modeval/polynomial.hpp"
#include "modeval/prime_field.hpp"

namespace modeval::oracle {

using OracleImage = BivariateImage;

/// (x * y) mod p for any 64-bit inputs; p > 0.
std::uint64_t naive_modmul(std::uint64_t x, std::uint64_t y, std::uint64_t p);
/// (x + y) mod p for any 64-bit inputs; p > 0.
std::uint64_t naive_modadd(std::uint64_t x, std::uint64_t y, std::uint64_t p);
/// x^k mod p.
std::uint64_t naive_powmod(std::uint64_t x, std::uint64_t k, std::uint64_t p);

/// f(x1, x2, beta^t) by direct substitution, t >= 1. Terms of f may be in
/// any order; the result lists nonzero coefficients by descending (d, e).
OracleImage naive_evaluate(const SparsePolynomial& f, const EvalPoint& beta, std::uint64_t t,
                           const PrimeModulus& m);

/// Images for t = 1..T.
ImageSet naive_evaluate_all(const SparsePolynomial& f, const EvalPoint& beta, std::size_t T,
                            const PrimeModulus& m);

}  // namespace modeval::oracle
