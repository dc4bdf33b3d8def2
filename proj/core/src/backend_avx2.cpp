// Copyright 2026 The modeval Authors
// SPDX-License-Identifier: Apache-2.0

// Compiled with -mavx2 -mfma.

#include "simd/kernels.hpp"
#include "simd/registry.hpp"
#include "simd/vec_avx2.hpp"

namespace modeval::detail {

const BackendOps& avx2_ops() noexcept {
  static constexpr BackendOps ops = make_ops<Avx2Lanes, true>(BackendKind::v4, "v4");
  return ops;
}

}  // namespace modeval::detail
