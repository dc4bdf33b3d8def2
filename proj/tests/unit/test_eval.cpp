// Copyright 2026 The modeval Authors
// SPDX-License-Identifier: Apache-2.0

#include <gtest/gtest.h>

#include <random>
#include <string>

#include "modeval/error.hpp"
#include "modeval/eval.hpp"
#include "modeval/oracle.hpp"
#include "support.hpp"

namespace modeval {
namespace {

using Row = std::vector<std::uint32_t>;

std::string where(const ImageSet& want, const ImageSet& got) {
  const auto div = first_divergence(want, got);
  return div ? "t=" + std::to_string(div->t) + " pos=" + std::to_string(div->position) + ": " +
                   div->detail
             : std::string("equal");
}

#define EXPECT_IMAGES_EQ(want, got) EXPECT_EQ(want, got) << where(want, got)

EvalPlan plan_on(std::size_t ti, std::size_t td, std::size_t mu, BackendKind kind) {
  EvalPlan p{ti, td, mu, BackendRequest::automatic};
  p.backend = kind == BackendKind::portable ? BackendRequest::portable
              : kind == BackendKind::v4     ? BackendRequest::v4
                                            : BackendRequest::v8;
  return p;
}

TEST(EvalScalar, HandExample) {
  SparsePolynomial f(3);
  f.add_term(1, Row{0, 0, 1});
  f.add_term(5, Row{0, 0, 0});
  const PrimeModulus m(7);
  for (auto arith : {ScalarArith::integer, ScalarArith::floating}) {
    MonomialEvals me = prepare(f, EvalPoint{{2}}, m);
    const ImageSet images = eval_scalar(me, m, 2, arith);
    ASSERT_EQ(images.size(), 2u);
    EXPECT_EQ(images[0].t, 1u);
    EXPECT_TRUE(images[0].terms.empty());
    ASSERT_EQ(images[1].terms.size(), 1u);
    EXPECT_EQ(images[1].terms[0], (ImageTerm{0, 0, 2}));
    // a ends as a_i * m_i^T.
    EXPECT_EQ(me.a.get(0), 4u);  // 1 * 2^2
    EXPECT_EQ(me.a.get(1), 5u);
  }
}

TEST(EvalScalar, NoEvaluatedVariablesGivesInputTerms) {
  SparsePolynomial f(4);
  f.add_term(3, Row{2, 1, 0, 0});
  f.add_term(4, Row{0, 5, 0, 0});
  const PrimeModulus m(13);
  MonomialEvals me = prepare(f, EvalPoint{{5, 6}}, m);
  for (const auto& img : eval_scalar(me, m, 4)) {
    ASSERT_EQ(img.terms.size(), 2u);
    EXPECT_EQ(img.terms[0], (ImageTerm{2, 1, 3}));
    EXPECT_EQ(img.terms[1], (ImageTerm{0, 5, 4}));
  }
}

TEST(EvalScalar, CountsHadamardOps) {
  std::mt19937_64 rng(41);
  auto inst = testing::random_instance(rng, 700, 6, 10);
  const PrimeModulus m(inst.p);
  MonomialEvals me = prepare(inst.f, inst.beta, m);
  OpCounts counts;
  eval_scalar(me, m, 13, ScalarArith::integer, &counts);
  EXPECT_EQ(counts.mul, inst.f.size() * 13);
  EXPECT_LE(counts.add, inst.f.size() * 13);
}

TEST(EvalScalar, RandomMatchesOracle) {
  std::mt19937_64 rng(42);
  for (int r = 0; r < 15; ++r) {
    auto inst = testing::random_instance(rng, 1000, 6, 10);
    const PrimeModulus m(inst.p);
    const std::size_t T = 1 + rng() % 64;
    const ImageSet want = oracle::naive_evaluate_all(inst.f, inst.beta, T, m);
    for (auto arith : {ScalarArith::integer, ScalarArith::floating}) {
      MonomialEvals me = prepare(inst.f, inst.beta, m);
      EXPECT_IMAGES_EQ(want, eval_scalar(me, m, T, arith));
    }
  }
}

TEST(EvalProperties, GroupSumsAndGeometricProgression) {
  std::mt19937_64 rng(43);
  auto inst = testing::random_instance(rng, 400, 5, 6);
  const PrimeModulus m(inst.p);
  MonomialEvals me = prepare(inst.f, inst.beta, m);
  const std::vector<std::uint64_t> mv = me.m.to_vector();
  const std::size_t T = 20;
  const ImageSet images = eval_simd(me, m, T);
  for (std::size_t t = 1; t <= T; ++t) {
    // Independent recomputation of every group's coefficient.
    std::vector<ImageTerm> want;
    for (std::size_t g = 0; g < me.groups.size(); ++g) {
      std::uint64_t c = 0;
      for (std::size_t i = me.groups.offsets[g]; i < me.groups.offsets[g + 1]; ++i) {
        c = oracle::naive_modadd(
            c, oracle::naive_modmul(inst.f.coeff(i), oracle::naive_powmod(mv[i], t, inst.p), inst.p),
            inst.p);
      }
      if (c != 0) want.push_back({me.groups.keys[g].d, me.groups.keys[g].e, c});
    }
    ASSERT_EQ(images[t - 1].terms, want);
    for (const auto& term : images[t - 1].terms) ASSERT_NE(term.c, 0u);
  }
  // Single-term groups advance by a factor m_i per step.
  for (std::size_t g = 0; g < me.groups.size(); ++g) {
    if (me.groups.offsets[g + 1] - me.groups.offsets[g] != 1) continue;
    const std::size_t i = me.groups.offsets[g];
    std::uint64_t prev = 0;
    for (std::size_t t = 1; t <= T; ++t) {
      std::uint64_t c = 0;
      for (const auto& term : images[t - 1].terms) {
        if (term.d == me.groups.keys[g].d && term.e == me.groups.keys[g].e) c = term.c;
      }
      if (t > 1) ASSERT_EQ(c, testing::wide_mulmod(prev, mv[i], inst.p));
      prev = c;
    }
  }
}

TEST(EvalProperties, CancellingGroupIsDropped) {
  // x1 * (1 + 6 x3) over p = 7 with beta = 1: the group sums to 0 every time.
  SparsePolynomial f(3);
  f.add_term(6, Row{1, 0, 1});
  f.add_term(1, Row{1, 0, 0});
  f.add_term(2, Row{0, 0, 0});
  const PrimeModulus m(7);
  MonomialEvals me = prepare(f, EvalPoint{{1}}, m);
  const ImageSet want = oracle::naive_evaluate_all(f, EvalPoint{{1}}, 5, m);
  for (const auto& img : want) {
    ASSERT_EQ(img.terms.size(), 1u);
    EXPECT_EQ(img.terms[0], (ImageTerm{0, 0, 2}));
  }
  EXPECT_IMAGES_EQ(want, eval_simd(me, m, 5));
  me.reset();
  EXPECT_IMAGES_EQ(want, eval_blocked(me, m, 5, EvalPlan{2, 2, 1}));
}

class KernelsOnBackend : public ::testing::TestWithParam<BackendKind> {
 protected:
  void SetUp() override {
    if (!backend_available(GetParam())) GTEST_SKIP() << "backend not available on this host";
  }
};

TEST_P(KernelsOnBackend, SimdMatchesScalarOnEdgeShapes) {
  const Backend& b = backend_for(GetParam());
  std::mt19937_64 rng(44);
  const PrimeModulus m(testing::random_prime(rng, 48));
  // One group per length so that every head/body/tail combination occurs.
  SparsePolynomial f(3);
  std::uniform_int_distribution<std::uint64_t> coef(1, m.value() - 1);
  std::uint32_t d = 40;
  for (std::size_t len : {1u, 3u, 8u, 7u, 16u, 2u, 9u, 17u, 4u, 5u, 31u, 1u}) {
    for (std::size_t i = 0; i < len; ++i) {
      f.add_term(coef(rng), Row{d, 0, static_cast<std::uint32_t>(len - i)});
    }
    --d;
  }
  const EvalPoint beta = sample_eval_point(3, m, 4);
  MonomialEvals me = prepare(f, beta, m);
  const ImageSet want = eval_scalar(me, m, 9);
  const std::vector<std::uint64_t> a_end = me.a.to_vector();
  me.reset();
  EXPECT_IMAGES_EQ(want, eval_simd(me, m, 9, b));
  EXPECT_EQ(me.a.to_vector(), a_end);
  EXPECT_EQ(me.a.carrier(), Carrier::integer);
}

TEST_P(KernelsOnBackend, SingleTerm) {
  const Backend& b = backend_for(GetParam());
  SparsePolynomial f(3);
  f.add_term(3, Row{0, 0, 1});
  const PrimeModulus m(101);
  MonomialEvals me = prepare(f, EvalPoint{{10}}, m);
  const ImageSet want = oracle::naive_evaluate_all(f, EvalPoint{{10}}, 6, m);
  EXPECT_IMAGES_EQ(want, eval_simd(me, m, 6, b));
  me.reset();
  EXPECT_IMAGES_EQ(want, eval_blocked_noalloc(me, m, 6, 4, 2, b));
  me.reset();
  EXPECT_IMAGES_EQ(want, eval_blocked(me, m, 6, plan_on(4, 1, 1, GetParam())));
}

TEST_P(KernelsOnBackend, BlockedRemainderExample) {
  // T = 37 with (8, 2, 1): two blocks of 16, then 5 = 8 * 0 + 5.
  std::mt19937_64 rng(45);
  auto inst = testing::random_instance(rng, 600, 6, 10);
  const PrimeModulus m(inst.p);
  MonomialEvals me = prepare(inst.f, inst.beta, m);
  const ImageSet want = eval_scalar(me, m, 37);
  me.reset();
  const std::vector<std::uint64_t> a0 = me.a.to_vector();
  EXPECT_IMAGES_EQ(want, eval_blocked(me, m, 37, plan_on(8, 2, 1, GetParam())));
  EXPECT_EQ(me.a.to_vector(), a0);
  // 37 = 3 * 12 + 1 with (3, 4, 3): remainder 1 = 3 * 0 + 1.
  EXPECT_IMAGES_EQ(want, eval_blocked(me, m, 37, plan_on(3, 4, 3, GetParam())));
  // 37 = 1 * 24 + 13 with (4, 6, 5): remainder 13 = 4 * 3 + 1.
  EXPECT_IMAGES_EQ(want, eval_blocked(me, m, 37, plan_on(4, 6, 5, GetParam())));
}

TEST_P(KernelsOnBackend, AllPlansMatchOracle) {
  std::mt19937_64 rng(46 + static_cast<unsigned>(GetParam()));
  for (int r = 0; r < 3; ++r) {
    auto inst = testing::random_instance(rng, 300, 7, 8);
    const PrimeModulus m(inst.p);
    const std::size_t T = 17 + rng() % 60;
    const ImageSet want = oracle::naive_evaluate_all(inst.f, inst.beta, T, m);
    MonomialEvals me = prepare(inst.f, inst.beta, m);
    for (std::size_t ti : {1u, 2u, 4u, 8u, 16u}) {
      for (std::size_t td : {1u, 2u, 4u, 8u, 16u}) {
        for (std::size_t mu : {1u, 2u, 4u, 8u, 16u}) {
          ASSERT_EQ(want, eval_blocked(me, m, T, plan_on(ti, td, mu, GetParam())))
              << "plan " << ti << "," << td << "," << mu;
        }
      }
    }
    const Backend& b = backend_for(GetParam());
    for (std::size_t td : {1u, 2u, 3u, 4u, 8u, 16u}) {
      for (std::size_t mu : {1u, 2u, 4u, 8u, 16u}) {
        me.reset();
        ASSERT_EQ(want, eval_blocked_noalloc(me, m, T, td, mu, b)) << td << "," << mu;
      }
    }
  }
}

TEST_P(KernelsOnBackend, GammaLambdas) {
  std::mt19937_64 rng(47);
  auto inst = testing::random_instance(rng, 200, 5, 6);
  const PrimeModulus m(inst.p);
  MonomialEvals me = prepare(inst.f, inst.beta, m);
  const auto mv = me.m.to_vector();
  for (std::size_t ti : {1u, 3u, 4u, 13u}) {
    reset_field_array_stats();
    GammaLambdas gl = precompute_gamma_lambdas(me, m, ti, backend_for(GetParam()));
    EXPECT_EQ(field_array_stats().arrays, ti + 1);
    EXPECT_EQ(field_array_stats().elements, (ti + 1) * me.size());
    ASSERT_EQ(gl.lambdas.size(), ti);
    for (std::size_t i = 0; i < me.size(); ++i) {
      ASSERT_EQ(gl.gamma.get(i), oracle::naive_powmod(mv[i], ti, inst.p));
      for (std::size_t k = 0; k < ti; ++k) {
        ASSERT_EQ(gl.lambdas[k].get(i),
                  oracle::naive_modmul(inst.f.coeff(i),
                                       oracle::naive_powmod(mv[i], k + 1, inst.p), inst.p));
      }
    }
  }
}

INSTANTIATE_TEST_SUITE_P(Backends, KernelsOnBackend,
                         ::testing::Values(BackendKind::portable, BackendKind::v4,
                                           BackendKind::v8),
                         [](const auto& info) { return std::string(to_string(info.param)); });

TEST(EvalPlan, Validation) {
  EXPECT_THROW((EvalPlan{0, 1, 1}.validate()), Error);
  EXPECT_THROW((EvalPlan{1, 0, 1}.validate()), Error);
  EXPECT_THROW((EvalPlan{1, 1, 0}.validate()), Error);
  try {
    EvalPlan{1, 1, 0}.validate();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::plan_invalid);
  }
  EXPECT_TRUE((EvalPlan{16, 8, 1}.in_tuning_grid()));
  EXPECT_FALSE((EvalPlan{3, 8, 1}.in_tuning_grid()));
  EXPECT_FALSE((EvalPlan{32, 8, 1}.in_tuning_grid()));
}

TEST(EvalBlocked, SpecializationCoverage) {
  for (BackendKind kind : available_backends()) {
    const auto& ops = backend_for(kind).ops();
    EXPECT_EQ(ops.specialized({8, 8, 4}), kind != BackendKind::portable);
    EXPECT_FALSE(ops.specialized({3, 8, 4}));
  }
}

TEST(EvalBlocked, ZeroEvaluationsAndEmptyPolynomial) {
  const PrimeModulus m(101);
  SparsePolynomial f(3);
  f.add_term(3, Row{0, 0, 1});
  MonomialEvals me = prepare(f, EvalPoint{{10}}, m);
  EXPECT_TRUE(eval_blocked(me, m, 0, EvalPlan{4, 4, 4}).empty());
  EXPECT_TRUE(eval_simd(me, m, 0).empty());

  SparsePolynomial empty(3);
  MonomialEvals none = prepare(empty, EvalPoint{{10}}, m);
  const ImageSet out = eval_blocked(none, m, 5, EvalPlan{2, 2, 2});
  ASSERT_EQ(out.size(), 5u);
  for (const auto& img : out) EXPECT_TRUE(img.terms.empty());
  EXPECT_EQ(eval_blocked_noalloc(none, m, 5, 2).size(), 5u);
}

TEST(EvalBlocked, NoallocAllocatesNoArrays) {
  std::mt19937_64 rng(48);
  auto inst = testing::random_instance(rng, 800, 6, 10);
  const PrimeModulus m(inst.p);
  MonomialEvals me = prepare(inst.f, inst.beta, m);
  reset_field_array_stats();
  eval_blocked_noalloc(me, m, 50, 16, 4);
  EXPECT_EQ(field_array_stats().arrays, 0u);
  reset_field_array_stats();
  eval_blocked(me, m, 50, EvalPlan{8, 4, 2});
  EXPECT_EQ(field_array_stats().arrays, 9u);
  EXPECT_EQ(field_array_stats().elements, 9 * me.size());
}

}  // namespace
}  // namespace modeval
