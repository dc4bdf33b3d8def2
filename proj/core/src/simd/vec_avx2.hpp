// Copyright 2026 The modeval Authors
// SPDX-License-Identifier: Apache-2.0

// Requires -mavx2 -mfma.

#pragma once

#include <immintrin.h>

#include <cstddef>

#include "modeval/simd/backend.hpp"

namespace modeval::detail {
namespace {

/// 4 x double with blendv-based reduction. blendv keys on the sign bit, so
/// a -0.0 would be treated as negative; for reduced operands and prime p
/// neither g nor g - p can be -0.0, which is why no extra compare is needed.
struct Avx2Lanes {
  using reg = __m256d;
  static constexpr std::size_t width = 4;

  static reg zero() noexcept { return _mm256_setzero_pd(); }
  static reg broadcast(double x) noexcept { return _mm256_set1_pd(x); }
  static reg load(const double* p) noexcept { return _mm256_load_pd(p); }
  static reg loadu(const double* p) noexcept { return _mm256_loadu_pd(p); }
  static void store(double* p, reg x) noexcept { _mm256_store_pd(p, x); }
  static void storeu(double* p, reg x) noexcept { _mm256_storeu_pd(p, x); }

  static __m256i native(LaneMask mask) noexcept {
    const __m256i bit = _mm256_setr_epi64x(1, 2, 4, 8);
    const __m256i all = _mm256_set1_epi64x(static_cast<long long>(mask.bits));
    return _mm256_cmpeq_epi64(_mm256_and_si256(all, bit), bit);
  }
  static reg maskz_loadu(LaneMask mask, const double* p) noexcept {
    return _mm256_maskload_pd(p, native(mask));
  }
  static void mask_storeu(double* p, LaneMask mask, reg x) noexcept {
    _mm256_maskstore_pd(p, native(mask), x);
  }

  static reg mulmod(reg x, reg y, reg p, reg u) noexcept {
    const reg h = _mm256_mul_pd(x, y);
    const reg l = _mm256_fmsub_pd(x, y, h);
    const reg b = _mm256_mul_pd(h, u);
    const reg c = _mm256_floor_pd(b);
    const reg d = _mm256_fnmadd_pd(c, p, h);
    reg g = _mm256_add_pd(d, l);
    g = _mm256_blendv_pd(g, _mm256_add_pd(g, p), g);
    const reg t = _mm256_sub_pd(g, p);
    return _mm256_blendv_pd(t, g, t);
  }

  static reg addmod(reg x, reg y, reg p) noexcept {
    const reg s = _mm256_add_pd(x, y);
    const reg t = _mm256_sub_pd(s, p);
    return _mm256_blendv_pd(t, s, t);
  }

  static double reduce_addmod(reg x, reg p) noexcept {
    x = addmod(x, _mm256_permute2f128_pd(x, x, 0x01), p);
    x = addmod(x, _mm256_permute_pd(x, 0x5), p);
    return _mm256_cvtsd_f64(x);
  }
};

}  // namespace
}  // namespace modeval::detail
