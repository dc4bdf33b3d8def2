// Copyright 2026 The modeval Authors
// SPDX-License-Identifier: Apache-2.0

#include "modeval/prime_field.hpp"

#include <bit>
#include <cfenv>
#include <string>

#include "modeval/error.hpp"

namespace modeval {

const char* errc_name(Errc code) noexcept {
  switch (code) {
    case Errc::not_prime: return "NotPrime";
    case Errc::too_large: return "TooLarge";
    case Errc::too_small: return "TooSmall";
    case Errc::rounding_mode: return "RoundingMode";
    case Errc::invalid_argument: return "InvalidArgument";
    case Errc::plan_invalid: return "PlanInvalid";
    case Errc::parse_error: return "ParseError";
    case Errc::duplicate_monomial: return "DuplicateMonomial";
    case Errc::unsupported: return "Unsupported";
  }
  return "Unknown";
}

ParseError::ParseError(std::size_t line, const std::string& what)
    : Error(Errc::parse_error,
            line == 0 ? what : "line " + std::to_string(line) + ": " + what),
      line_(line) {}

namespace {

using u128 = unsigned __int128;

std::uint64_t mulmod_wide(std::uint64_t a, std::uint64_t b, std::uint64_t n) {
  return static_cast<std::uint64_t>(u128{a} * b % n);
}

std::uint64_t powmod_wide(std::uint64_t a, std::uint64_t e, std::uint64_t n) {
  std::uint64_t r = 1 % n;
  a %= n;
  while (e != 0) {
    if (e & 1) r = mulmod_wide(r, a, n);
    a = mulmod_wide(a, a, n);
    e >>= 1;
  }
  return r;
}

}  // namespace

bool is_prime(std::uint64_t n) noexcept {
  if (n < 2) return false;
  // The first twelve primes are a deterministic witness set below 3.3e24.
  constexpr std::uint64_t witnesses[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};
  for (std::uint64_t w : witnesses) {
    if (n == w) return true;
    if (n % w == 0) return false;
  }
  const int r = std::countr_zero(n - 1);
  const std::uint64_t d = (n - 1) >> r;
  for (std::uint64_t w : witnesses) {
    std::uint64_t x = powmod_wide(w, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int i = 1; i < r; ++i) {
      x = mulmod_wide(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

void require_round_to_nearest() {
  if (std::fegetround() != FE_TONEAREST) {
    throw Error(Errc::rounding_mode,
                "floating-point rounding mode must be round-to-nearest");
  }
}

PrimeModulus::PrimeModulus(std::uint64_t p) : p_(p) {
  if (p <= 2) {
    throw Error(Errc::too_small, "modulus " + std::to_string(p) + " must exceed 2");
  }
  if (p >= kModulusLimit) {
    throw Error(Errc::too_large, "modulus " + std::to_string(p) + " must be below 2^50");
  }
  if (!is_prime(p)) {
    throw Error(Errc::not_prime, "modulus " + std::to_string(p) + " is not prime");
  }
  require_round_to_nearest();
  p_fp_ = static_cast<double>(p);
  u_ = 1.0 / p_fp_;
  shift_ = static_cast<unsigned>(std::countl_zero(p));
  d_ = p << shift_;
  v_ = static_cast<std::uint64_t>(((u128{~d_} << 64) | ~std::uint64_t{0}) / d_);
}

std::uint64_t powmod(std::uint64_t x, std::uint64_t k, const PrimeModulus& m) noexcept {
  std::uint64_t result = 1;
  while (k != 0) {
    if (k & 1) result = mulmod_int(result, x, m);
    k >>= 1;
    if (k != 0) x = mulmod_int(x, x, m);
  }
  return result;
}

bool check_interpolation_bound(std::uint64_t p, std::uint64_t s) {
  if (s == 0) throw Error(Errc::invalid_argument, "term count must be at least 1");
  // 100 s^2 exceeds any 64-bit p once s reaches 2^32.
  if (s >= (std::uint64_t{1} << 32)) return false;
  return u128{p} > u128{100} * s * s;
}

bool check_interpolation_bound(const PrimeModulus& m, std::uint64_t s) {
  return check_interpolation_bound(m.value(), s);
}

}  // namespace modeval
