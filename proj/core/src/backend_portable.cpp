// Copyright 2026 The modeval Authors
// SPDX-License-Identifier: Apache-2.0

#include "simd/kernels.hpp"
#include "simd/registry.hpp"
#include "simd/vec_portable.hpp"

namespace modeval::detail {

// Runtime-shaped kernels only; the portable backend is a reference, not a
// tuning target.
const BackendOps& portable_ops() noexcept {
  static constexpr BackendOps ops =
      make_ops<PortableLanes<8>, false>(BackendKind::portable, "portable");
  return ops;
}

}  // namespace modeval::detail
