// Copyright 2026 The modeval Authors
// SPDX-License-Identifier: Apache-2.0

// Exact arithmetic in F_p for primes p < 2^50.
//
// Two interchangeable carriers are provided. The floating-point kernels work
// on doubles holding exact integers and use an FMA error-free product, which
// is what the vector backends replicate lane by lane. The integer kernels are
// the reference baseline: a 2-by-1 division with a precomputed reciprocal
// over the 128-bit product (Moller-Granlund) and a branch-free add.

#pragma once

#include <cassert>
#include <cmath>
#include <cstdint>

namespace modeval {

/// Moduli must satisfy 2 < p < kModulusLimit.
inline constexpr std::uint64_t kModulusLimit = std::uint64_t{1} << 50;

/// Deterministic Miller-Rabin for 64-bit inputs.
bool is_prime(std::uint64_t n) noexcept;

/// Throws Error(rounding_mode) unless the FP environment rounds to nearest.
void require_round_to_nearest();

/// A validated prime p < 2^50 with its precomputed reciprocals.
class PrimeModulus {
 public:
  /// Validates p; throws Error with code too_small, too_large or not_prime.
  explicit PrimeModulus(std::uint64_t p);

  std::uint64_t value() const noexcept { return p_; }
  /// p as an exact double.
  double fp() const noexcept { return p_fp_; }
  /// round-to-nearest(1 / p).
  double inverse() const noexcept { return u_; }

  // Normalized divisor data for the integer kernels.
  unsigned shift() const noexcept { return shift_; }
  std::uint64_t normalized() const noexcept { return d_; }
  std::uint64_t reciprocal() const noexcept { return v_; }

  friend bool operator==(const PrimeModulus& a, const PrimeModulus& b) noexcept {
    return a.p_ == b.p_;
  }

 private:
  std::uint64_t p_;
  double p_fp_;
  double u_;
  unsigned shift_;
  std::uint64_t d_;
  std::uint64_t v_;
};

inline PrimeModulus make_modulus(std::uint64_t p) { return PrimeModulus(p); }

/// (x * y) mod p on the FP carrier. x, y must be exact doubles in [0, p).
inline double mulmod_fp(double x, double y, const PrimeModulus& m) noexcept {
  assert(x >= 0.0 && x < m.fp() && y >= 0.0 && y < m.fp());
  const double p = m.fp();
  const double h = x * y;
  const double l = std::fma(x, y, -h);
  const double b = h * m.inverse();
  const double c = std::floor(b);
  const double d = std::fma(-c, p, h);
  const double g = d + l;
  if (g >= p) return g - p;
  if (g < 0.0) return g + p;
  return g;
}

/// (x + y) mod p on the FP carrier.
inline double addmod_fp(double x, double y, const PrimeModulus& m) noexcept {
  assert(x >= 0.0 && x < m.fp() && y >= 0.0 && y < m.fp());
  const double s = x + y;
  return s >= m.fp() ? s - m.fp() : s;
}

/// (x * y) mod p using the 128-bit product and the stored reciprocal.
inline std::uint64_t mulmod_int(std::uint64_t x, std::uint64_t y,
                                const PrimeModulus& m) noexcept {
  assert(x < m.value() && y < m.value());
  using u128 = unsigned __int128;
  const std::uint64_t d = m.normalized();
  // x*y < p^2, so after the shift the high word is below d.
  const u128 prod = (u128{x} * y) << m.shift();
  const auto u1 = static_cast<std::uint64_t>(prod >> 64);
  const auto u0 = static_cast<std::uint64_t>(prod);
  u128 q = u128{m.reciprocal()} * u1;
  q += (u128{u1 + 1} << 64) | u0;
  const auto q1 = static_cast<std::uint64_t>(q >> 64);
  const auto q0 = static_cast<std::uint64_t>(q);
  std::uint64_t r = u0 - q1 * d;
  r += d & (std::uint64_t{0} - static_cast<std::uint64_t>(r > q0));
  if (r >= d) [[unlikely]] r -= d;
  return r >> m.shift();
}

/// (x + y) mod p without a compare-and-branch.
inline std::uint64_t addmod_int(std::uint64_t x, std::uint64_t y,
                                const PrimeModulus& m) noexcept {
  assert(x < m.value() && y < m.value());
  const auto p = static_cast<std::int64_t>(m.value());
  std::int64_t s = static_cast<std::int64_t>(x + y) - p;
  s += p & (s >> 63);
  return static_cast<std::uint64_t>(s);
}

/// x^k mod p by square-and-multiply; x^0 == 1.
std::uint64_t powmod(std::uint64_t x, std::uint64_t k, const PrimeModulus& m) noexcept;

/// True iff p > 100 s^2, the size needed for distinct monomial evaluations
/// with reasonable probability. Advisory only. Throws for s == 0.
bool check_interpolation_bound(std::uint64_t p, std::uint64_t s);
bool check_interpolation_bound(const PrimeModulus& m, std::uint64_t s);

}  // namespace modeval
