// Copyright 2026 The modeval Authors
// SPDX-License-Identifier: Apache-2.0

// Requires -mavx512f.

#pragma once

#include <immintrin.h>

#include <cstddef>

#include "modeval/simd/backend.hpp"

namespace modeval::detail {
namespace {

/// 8 x double with the conditional corrections applied through __mmask8.
struct Avx512Lanes {
  using reg = __m512d;
  static constexpr std::size_t width = 8;

  static reg zero() noexcept { return _mm512_setzero_pd(); }
  static reg broadcast(double x) noexcept { return _mm512_set1_pd(x); }
  static reg load(const double* p) noexcept { return _mm512_load_pd(p); }
  static reg loadu(const double* p) noexcept { return _mm512_loadu_pd(p); }
  static void store(double* p, reg x) noexcept { _mm512_store_pd(p, x); }
  static void storeu(double* p, reg x) noexcept { _mm512_storeu_pd(p, x); }

  static reg maskz_loadu(LaneMask mask, const double* p) noexcept {
    return _mm512_maskz_loadu_pd(static_cast<__mmask8>(mask.bits), p);
  }
  static void mask_storeu(double* p, LaneMask mask, reg x) noexcept {
    _mm512_mask_storeu_pd(p, static_cast<__mmask8>(mask.bits), x);
  }

  static reg mulmod(reg x, reg y, reg p, reg u) noexcept {
    const reg h = _mm512_mul_pd(x, y);
    const reg l = _mm512_fmsub_pd(x, y, h);
    const reg b = _mm512_mul_pd(h, u);
    const reg c = _mm512_roundscale_pd(b, _MM_FROUND_TO_NEG_INF | _MM_FROUND_NO_EXC);
    const reg d = _mm512_fnmadd_pd(c, p, h);
    reg g = _mm512_add_pd(d, l);
    const __mmask8 negative = _mm512_cmp_pd_mask(g, _mm512_setzero_pd(), _CMP_LT_OQ);
    const __mmask8 too_big = _mm512_cmp_pd_mask(p, g, _CMP_LE_OQ);
    g = _mm512_mask_add_pd(g, negative, g, p);
    g = _mm512_mask_sub_pd(g, too_big, g, p);
    return g;
  }

  static reg addmod(reg x, reg y, reg p) noexcept {
    const reg s = _mm512_add_pd(x, y);
    const __mmask8 too_big = _mm512_cmp_pd_mask(p, s, _CMP_LE_OQ);
    return _mm512_mask_sub_pd(s, too_big, s, p);
  }

  static double reduce_addmod(reg x, reg p) noexcept {
    x = addmod(x, _mm512_shuffle_f64x2(x, x, _MM_SHUFFLE(1, 0, 3, 2)), p);
    x = addmod(x, _mm512_shuffle_f64x2(x, x, _MM_SHUFFLE(2, 3, 0, 1)), p);
    x = addmod(x, _mm512_permute_pd(x, 0x55), p);
    return _mm_cvtsd_f64(_mm512_castpd512_pd128(x));
  }
};

}  // namespace
}  // namespace modeval::detail
