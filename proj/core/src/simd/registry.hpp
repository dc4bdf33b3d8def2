// Copyright 2026 The modeval Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "modeval/simd/backend.hpp"

namespace modeval::detail {

const BackendOps& portable_ops() noexcept;
#if defined(MODEVAL_WITH_AVX2)
const BackendOps& avx2_ops() noexcept;
#endif
#if defined(MODEVAL_WITH_AVX512)
const BackendOps& avx512_ops() noexcept;
#endif

}  // namespace modeval::detail
