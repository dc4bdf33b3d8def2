// Copyright 2026 The modeval Authors
// SPDX-License-Identifier: Apache-2.0

// Compiled with -mavx512f -mavx512dq.

#include "simd/kernels.hpp"
#include "simd/registry.hpp"
#include "simd/vec_avx512.hpp"

namespace modeval::detail {

const BackendOps& avx512_ops() noexcept {
  static constexpr BackendOps ops = make_ops<Avx512Lanes, true>(BackendKind::v8, "v8");
  return ops;
}

}  // namespace modeval::detail
