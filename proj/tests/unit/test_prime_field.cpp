// Copyright 2026 The modeval Authors
// SPDX-License-Identifier: Apache-2.0

#include <gtest/gtest.h>

#include <cfenv>
#include <random>

#include "modeval/error.hpp"
#include "modeval/oracle.hpp"
#include "modeval/prime_field.hpp"
#include "support.hpp"

namespace modeval {
namespace {

using testing::random_prime;
using testing::sign_bit;
using testing::wide_mulmod;

Errc modulus_error(std::uint64_t p) {
  try {
    PrimeModulus m(p);
  } catch (const Error& e) {
    return e.code();
  }
  return Errc::invalid_argument;
}

TEST(PrimeModulus, SevenHasExactReciprocal) {
  const PrimeModulus m = make_modulus(7);
  EXPECT_EQ(m.value(), 7u);
  EXPECT_EQ(m.fp(), 7.0);
  EXPECT_EQ(m.inverse(), 1.0 / 7.0);
}

TEST(PrimeModulus, RejectsOutOfRange) {
  EXPECT_EQ(modulus_error(std::uint64_t{1} << 50), Errc::too_large);
  EXPECT_EQ(modulus_error(~std::uint64_t{0}), Errc::too_large);
  EXPECT_EQ(modulus_error(2), Errc::too_small);
  EXPECT_EQ(modulus_error(1), Errc::too_small);
  EXPECT_EQ(modulus_error(0), Errc::too_small);
}

TEST(PrimeModulus, RejectsComposites) {
  EXPECT_EQ(modulus_error(9), Errc::not_prime);
  EXPECT_EQ(modulus_error(561), Errc::not_prime);                  // Carmichael
  EXPECT_EQ(modulus_error(3215031751ull), Errc::not_prime);        // strong pseudoprime to 2,3,5,7
  EXPECT_EQ(modulus_error(1000003ull * 999983ull), Errc::not_prime);
}

TEST(PrimeModulus, Accepts50BitPrime) {
  mpz_class z("1125899906842589");
  ASSERT_GT(mpz_probab_prime_p(z.get_mpz_t(), 50), 0);
  const PrimeModulus m(1125899906842589ull);
  EXPECT_EQ(m.fp(), 1125899906842589.0);
  EXPECT_EQ(static_cast<std::uint64_t>(m.fp()), m.value());
}

TEST(PrimeModulus, PrimalityAgreesWithGmp) {
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<std::uint64_t> dist(3, kModulusLimit - 1);
  for (int i = 0; i < 20000; ++i) {
    const std::uint64_t n = dist(rng) | 1;
    mpz_class z(std::to_string(n));
    EXPECT_EQ(is_prime(n), mpz_probab_prime_p(z.get_mpz_t(), 40) > 0) << n;
  }
  for (std::uint64_t n = 0; n < 5000; ++n) {
    mpz_class z(std::to_string(n));
    EXPECT_EQ(is_prime(n), mpz_probab_prime_p(z.get_mpz_t(), 40) > 0) << n;
  }
}

TEST(PrimeModulus, RequiresRoundToNearest) {
  ASSERT_EQ(std::fesetround(FE_UPWARD), 0);
  Errc code = Errc::invalid_argument;
  try {
    PrimeModulus m(7);
  } catch (const Error& e) {
    code = e.code();
  }
  std::fesetround(FE_TONEAREST);
  EXPECT_EQ(code, Errc::rounding_mode);
}

TEST(MulmodFp, Examples) {
  const PrimeModulus m(7);
  const double z = mulmod_fp(0, 5, m);
  EXPECT_EQ(z, 0.0);
  EXPECT_FALSE(sign_bit(z));
  EXPECT_EQ(mulmod_fp(3, 5, m), 1.0);
  EXPECT_EQ(mulmod_fp(6, 6, m), 1.0);
}

TEST(MulmodFp, LargeOperandsMatchWideProduct) {
  const PrimeModulus m(1125899906842589ull);
  const std::uint64_t x = std::uint64_t{1} << 49;
  const std::uint64_t want = wide_mulmod(x, x, m.value());
  EXPECT_EQ(static_cast<std::uint64_t>(mulmod_fp(static_cast<double>(x),
                                                 static_cast<double>(x), m)),
            want);
  EXPECT_EQ(mulmod_int(x, x, m), want);
  const std::uint64_t pm1 = m.value() - 1;
  EXPECT_EQ(mulmod_int(pm1, pm1, m), 1u);
  EXPECT_EQ(mulmod_fp(static_cast<double>(pm1), static_cast<double>(pm1), m), 1.0);
}

TEST(AddmodFp, Examples) {
  const PrimeModulus m(7);
  const double z = addmod_fp(6, 1, m);
  EXPECT_EQ(z, 0.0);
  EXPECT_FALSE(sign_bit(z));
  EXPECT_EQ(addmod_fp(3, 3, m), 6.0);
  EXPECT_EQ(addmod_fp(0, 0, m), 0.0);
  EXPECT_FALSE(sign_bit(addmod_fp(0, 0, m)));
}

TEST(IntegerOps, Examples) {
  const PrimeModulus m(7);
  EXPECT_EQ(mulmod_int(3, 5, m), 1u);
  EXPECT_EQ(mulmod_int(6, 6, m), 1u);
  EXPECT_EQ(mulmod_int(0, 6, m), 0u);
  EXPECT_EQ(addmod_int(6, 1, m), 0u);
  EXPECT_EQ(addmod_int(3, 3, m), 6u);
}

TEST(ModularOps, RandomAgreeWithOracle) {
  std::mt19937_64 rng(2024);
  for (int k = 0; k < 24; ++k) {
    const unsigned bits = 20 + static_cast<unsigned>(k) * 30 / 23;
    const PrimeModulus m(random_prime(rng, bits));
    const std::uint64_t p = m.value();
    std::uniform_int_distribution<std::uint64_t> el(0, p - 1);
    for (int i = 0; i < 20000; ++i) {
      const std::uint64_t x = el(rng);
      const std::uint64_t y = el(rng);
      const std::uint64_t prod = oracle::naive_modmul(x, y, p);
      const std::uint64_t sum = oracle::naive_modadd(x, y, p);
      const double fx = static_cast<double>(x);
      const double fy = static_cast<double>(y);
      const double pf = mulmod_fp(fx, fy, m);
      const double sf = addmod_fp(fx, fy, m);
      ASSERT_EQ(static_cast<std::uint64_t>(pf), prod) << p << " " << x << " " << y;
      ASSERT_EQ(mulmod_int(x, y, m), prod) << p << " " << x << " " << y;
      ASSERT_EQ(static_cast<std::uint64_t>(sf), sum);
      ASSERT_EQ(addmod_int(x, y, m), sum);
      ASSERT_FALSE(sign_bit(pf));
      ASSERT_FALSE(sign_bit(sf));
      ASSERT_LT(pf, m.fp());
      ASSERT_GE(pf, 0.0);
      if (x != 0 && y != 0) ASSERT_NE(prod, 0u);
    }
  }
}

TEST(ModularOps, ExhaustiveSmallPrimes) {
  for (std::uint64_t p : testing::small_primes(61)) {
    const PrimeModulus m(p);
    for (std::uint64_t x = 0; x < p; ++x) {
      for (std::uint64_t y = 0; y < p; ++y) {
        const auto fx = static_cast<double>(x);
        const auto fy = static_cast<double>(y);
        ASSERT_EQ(mulmod_fp(fx, fy, m), static_cast<double>(x * y % p));
        ASSERT_EQ(addmod_fp(fx, fy, m), static_cast<double>((x + y) % p));
        ASSERT_EQ(mulmod_int(x, y, m), x * y % p);
        ASSERT_EQ(addmod_int(x, y, m), (x + y) % p);
      }
    }
  }
}

TEST(Powmod, Examples) {
  const PrimeModulus m(1009);
  EXPECT_EQ(powmod(2, 10, m), 15u);
  EXPECT_EQ(powmod(0, 0, m), 1u);
  EXPECT_EQ(powmod(123, 0, m), 1u);
  EXPECT_EQ(powmod(0, 5, m), 0u);
}

TEST(Powmod, MatchesRepeatedMultiplication) {
  std::mt19937_64 rng(5);
  for (int k = 0; k < 10; ++k) {
    const PrimeModulus m(random_prime(rng, 30 + k * 2));
    std::uniform_int_distribution<std::uint64_t> el(0, m.value() - 1);
    const std::uint64_t x = el(rng);
    std::uint64_t acc = 1 % m.value();
    for (std::uint64_t e = 0; e < 300; ++e) {
      ASSERT_EQ(powmod(x, e, m), acc);
      acc = wide_mulmod(acc, x, m.value());
    }
  }
}

TEST(Powmod, ExponentsAdd) {
  std::mt19937_64 rng(6);
  const PrimeModulus m(random_prime(rng, 47));
  std::uniform_int_distribution<std::uint64_t> el(0, m.value() - 1);
  std::uniform_int_distribution<std::uint64_t> ex(0, std::uint64_t{1} << 40);
  for (int i = 0; i < 2000; ++i) {
    const std::uint64_t x = el(rng);
    const std::uint64_t a = ex(rng);
    const std::uint64_t b = ex(rng);
    ASSERT_EQ(powmod(x, a + b, m), mulmod_int(powmod(x, a, m), powmod(x, b, m), m));
    ASSERT_EQ(powmod(x, a, m), oracle::naive_powmod(x, a, m.value()));
  }
}

TEST(InterpolationBound, Examples) {
  EXPECT_TRUE(check_interpolation_bound(1009, 1));
  EXPECT_FALSE(check_interpolation_bound(1009, 10));
  // 2^49 ~ 5.6e14 exceeds 100 * (10^6)^2 = 10^14 but not 100 * (10^7)^2.
  EXPECT_TRUE(check_interpolation_bound(std::uint64_t{1} << 49, 1000000));
  EXPECT_FALSE(check_interpolation_bound(std::uint64_t{1} << 49, 10000000));
  EXPECT_FALSE(check_interpolation_bound(std::uint64_t{1} << 49, std::uint64_t{1} << 40));
  EXPECT_THROW(check_interpolation_bound(1009, 0), Error);
  EXPECT_TRUE(check_interpolation_bound(PrimeModulus(1009), 3));
  EXPECT_FALSE(check_interpolation_bound(PrimeModulus(1009), 4));  // 1600 >= 1009
}

}  // namespace
}  // namespace modeval
