// Copyright 2026 The modeval Authors
// SPDX-License-Identifier: Apache-2.0

#include <gtest/gtest.h>

#include <random>

#include "modeval/error.hpp"
#include "modeval/oracle.hpp"
#include "support.hpp"

namespace modeval {
namespace {

using Row = std::vector<std::uint32_t>;

TEST(Oracle, ModmulExamples) {
  EXPECT_EQ(oracle::naive_modmul(3, 5, 7), 1u);
  const std::uint64_t p = 1125899906842589ull;
  EXPECT_EQ(oracle::naive_modmul(p - 1, p - 1, p), 1u);
  EXPECT_EQ(oracle::naive_modadd(6, 1, 7), 0u);
  EXPECT_EQ(oracle::naive_powmod(2, 10, 1009), 15u);
  EXPECT_THROW(oracle::naive_modmul(1, 1, 0), Error);
}

TEST(Oracle, ModmulMatchesWideProduct) {
  std::mt19937_64 rng(31);
  for (int i = 0; i < 100000; ++i) {
    const std::uint64_t p = (rng() >> 1) | 1;
    const std::uint64_t x = rng();
    const std::uint64_t y = rng();
    ASSERT_EQ(oracle::naive_modmul(x, y, p), testing::wide_mulmod(x % p, y % p, p));
  }
}

TEST(Oracle, ConstantPolynomial) {
  SparsePolynomial f(4);
  f.add_term(9, Row{0, 0, 0, 0});
  const PrimeModulus m(11);
  for (std::uint64_t t = 1; t < 5; ++t) {
    const auto img = oracle::naive_evaluate(f, EvalPoint{{3, 4}}, t, m);
    EXPECT_EQ(img.t, t);
    ASSERT_EQ(img.terms.size(), 1u);
    EXPECT_EQ(img.terms[0], (ImageTerm{0, 0, 9}));
  }
}

TEST(Oracle, SingleVariableExample) {
  SparsePolynomial f(3);
  f.add_term(1, Row{0, 0, 1});
  const auto img = oracle::naive_evaluate(f, EvalPoint{{2}}, 3, PrimeModulus(7));
  ASSERT_EQ(img.terms.size(), 1u);
  EXPECT_EQ(img.terms[0].c, 1u);
}

TEST(Oracle, HandExample) {
  // f = 5 + x3, beta = 2, p = 7: b_1 = 0 (dropped), b_2 = 2.
  SparsePolynomial f(3);
  f.add_term(1, Row{0, 0, 1});
  f.add_term(5, Row{0, 0, 0});
  const auto images = oracle::naive_evaluate_all(f, EvalPoint{{2}}, 2, PrimeModulus(7));
  ASSERT_EQ(images.size(), 2u);
  EXPECT_TRUE(images[0].terms.empty());
  ASSERT_EQ(images[1].terms.size(), 1u);
  EXPECT_EQ(images[1].terms[0], (ImageTerm{0, 0, 2}));
}

TEST(Oracle, OrderIndependentOfInputOrder) {
  SparsePolynomial f(3);
  f.add_term(1, Row{0, 1, 1});
  f.add_term(2, Row{3, 0, 2});
  f.add_term(4, Row{0, 1, 0});
  const auto img = oracle::naive_evaluate(f, EvalPoint{{3}}, 1, PrimeModulus(101));
  ASSERT_EQ(img.terms.size(), 2u);
  EXPECT_EQ(img.terms[0], (ImageTerm{3, 0, 18}));  // 2 * 3^2
  EXPECT_EQ(img.terms[1], (ImageTerm{0, 1, 7}));   // 1 * 3 + 4
  EXPECT_THROW(oracle::naive_evaluate(f, EvalPoint{{3}}, 0, PrimeModulus(101)), Error);
}

}  // namespace
}  // namespace modeval
