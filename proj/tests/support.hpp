// Copyright 2026 The modeval Authors
// SPDX-License-Identifier: Apache-2.0

// Shared helpers for the test binaries. Primes are drawn with GMP so that
// the library's own primality test is never its own witness.

#pragma once

#include <gmpxx.h>

#include <bit>
#include <cstdint>
#include <random>
#include <vector>

#include "modeval/polyio.hpp"
#include "modeval/polynomial.hpp"
#include "modeval/prime_field.hpp"

namespace modeval::testing {

/// Uniform random prime with exactly `bits` bits (bits in [3, 50]).
inline std::uint64_t random_prime(std::mt19937_64& rng, unsigned bits) {
  const std::uint64_t lo = std::uint64_t{1} << (bits - 1);
  std::uniform_int_distribution<std::uint64_t> dist(lo, 2 * lo - 1);
  for (;;) {
    mpz_class z(std::to_string(dist(rng)));
    mpz_nextprime(z.get_mpz_t(), z.get_mpz_t());
    const std::uint64_t p = std::stoull(z.get_str());
    if (p < 2 * lo) return p;
  }
}

/// Primes p <= limit, by trial division.
inline std::vector<std::uint64_t> small_primes(std::uint64_t limit) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t p = 3; p <= limit; ++p) {
    bool prime = true;
    for (std::uint64_t q = 2; q * q <= p; ++q) {
      if (p % q == 0) {
        prime = false;
        break;
      }
    }
    if (prime) out.push_back(p);
  }
  return out;
}

inline bool sign_bit(double x) { return (std::bit_cast<std::uint64_t>(x) >> 63) != 0; }

/// (x * y) mod p with a 128-bit product.
inline std::uint64_t wide_mulmod(std::uint64_t x, std::uint64_t y, std::uint64_t p) {
  return static_cast<std::uint64_t>(static_cast<unsigned __int128>(x) * y % p);
}

/// Random instance in the ranges used by the kernel equivalence checks.
struct Instance {
  std::uint64_t p;
  SparsePolynomial f;
  EvalPoint beta;
};

inline Instance random_instance(std::mt19937_64& rng, std::size_t s_max, std::size_t n_max,
                                std::uint32_t d_max) {
  std::uniform_int_distribution<unsigned> bits(20, 50);
  std::uniform_int_distribution<std::size_t> ns(3, n_max);
  std::uniform_int_distribution<std::uint32_t> ds(0, d_max);
  const std::uint64_t p = random_prime(rng, bits(rng));
  const std::size_t n = ns(rng);
  std::uint32_t d = ds(rng);
  // Keep enough distinct monomials available.
  double space = 1;
  for (std::size_t k = 0; k < n; ++k) space *= d + 1.0;
  std::uniform_int_distribution<std::size_t> ss(1, s_max);
  std::size_t s = ss(rng);
  if (static_cast<double>(s) > space) s = static_cast<std::size_t>(space);
  GenSpec spec{s, n, d, p, rng()};
  SparsePolynomial f = generate(spec);
  const PrimeModulus m(p);
  EvalPoint beta = sample_eval_point(n, m, rng());
  return {p, std::move(f), std::move(beta)};
}

}  // namespace modeval::testing
