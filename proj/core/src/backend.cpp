// Copyright 2026 The modeval Authors
// SPDX-License-Identifier: Apache-2.0

#include "modeval/simd/backend.hpp"

#include <cstdlib>
#include <string>

#include "modeval/error.hpp"
#include "simd/registry.hpp"

namespace modeval {

namespace {

bool cpu_has(BackendKind kind) noexcept {
  switch (kind) {
    case BackendKind::portable:
      return true;
    case BackendKind::v4:
#if defined(MODEVAL_WITH_AVX2) && (defined(__x86_64__) || defined(__i386__))
      return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
      return false;
#endif
    case BackendKind::v8:
#if defined(MODEVAL_WITH_AVX512) && (defined(__x86_64__) || defined(__i386__))
      return __builtin_cpu_supports("avx512f") && __builtin_cpu_supports("avx512dq");
#else
      return false;
#endif
  }
  return false;
}

const detail::BackendOps* ops_for(BackendKind kind) noexcept {
  switch (kind) {
    case BackendKind::portable:
      return &detail::portable_ops();
    case BackendKind::v4:
#if defined(MODEVAL_WITH_AVX2)
      return &detail::avx2_ops();
#else
      return nullptr;
#endif
    case BackendKind::v8:
#if defined(MODEVAL_WITH_AVX512)
      return &detail::avx512_ops();
#else
      return nullptr;
#endif
  }
  return nullptr;
}

}  // namespace

FieldVector Backend::vmulmod(const FieldVector& x, const FieldVector& y,
                             const PrimeModulus& m) const {
  FieldVector out;
  ops_->mul_arrays(x.lanes.data(), y.lanes.data(), out.lanes.data(), width(), m);
  return out;
}

FieldVector Backend::vaddmod(const FieldVector& x, const FieldVector& y,
                             const PrimeModulus& m) const {
  FieldVector out;
  ops_->add_arrays(x.lanes.data(), y.lanes.data(), out.lanes.data(), width(), m);
  return out;
}

double Backend::vreduce_addmod(const FieldVector& x, const PrimeModulus& m) const {
  return ops_->reduce(x.lanes.data(), m);
}

void Backend::masked_vmulmod_accumulate(std::span<double> a, std::span<const double> mvals,
                                        std::size_t start, LaneMask mask, FieldVector& c,
                                        const PrimeModulus& m) const {
  const LaneMask usable{mask.bits & LaneMask::prefix(width()).bits};
  for (std::size_t i = 0; i < width(); ++i) {
    if (usable.test(i) && (start + i >= a.size() || start + i >= mvals.size())) {
      throw Error(Errc::invalid_argument, "masked lane out of range");
    }
  }
  // The kernel reads and writes through raw pointers at start; keep them
  // valid even when start sits at the end of a short span.
  if (usable.bits == 0) return;
  ops_->masked_accumulate(a.data() + start, mvals.data() + start, usable, c.lanes.data(), m);
}

void Backend::mulmod_arrays(std::span<const double> x, std::span<const double> y,
                            std::span<double> out, const PrimeModulus& m) const {
  if (x.size() != y.size() || out.size() != x.size()) {
    throw Error(Errc::invalid_argument, "array sizes differ");
  }
  ops_->mul_arrays(x.data(), y.data(), out.data(), x.size(), m);
}

void Backend::addmod_arrays(std::span<const double> x, std::span<const double> y,
                            std::span<double> out, const PrimeModulus& m) const {
  if (x.size() != y.size() || out.size() != x.size()) {
    throw Error(Errc::invalid_argument, "array sizes differ");
  }
  ops_->add_arrays(x.data(), y.data(), out.data(), x.size(), m);
}

std::string_view to_string(BackendKind kind) noexcept {
  switch (kind) {
    case BackendKind::portable:
      return "portable";
    case BackendKind::v4:
      return "v4";
    case BackendKind::v8:
      return "v8";
  }
  return "?";
}

std::string_view to_string(BackendRequest request) noexcept {
  switch (request) {
    case BackendRequest::automatic:
      return "auto";
    case BackendRequest::portable:
      return "portable";
    case BackendRequest::v4:
      return "v4";
    case BackendRequest::v8:
      return "v8";
  }
  return "?";
}

BackendRequest parse_backend_request(std::string_view text) {
  if (text == "auto") return BackendRequest::automatic;
  if (text == "portable") return BackendRequest::portable;
  if (text == "v4" || text == "avx2") return BackendRequest::v4;
  if (text == "v8" || text == "avx512") return BackendRequest::v8;
  throw Error(Errc::invalid_argument, "unknown backend '" + std::string(text) + "'");
}

bool backend_available(BackendKind kind) noexcept {
  return ops_for(kind) != nullptr && cpu_has(kind);
}

std::vector<BackendKind> available_backends() {
  std::vector<BackendKind> out;
  for (BackendKind k : {BackendKind::portable, BackendKind::v4, BackendKind::v8}) {
    if (backend_available(k)) out.push_back(k);
  }
  return out;
}

const Backend& backend_for(BackendKind kind) {
  if (!backend_available(kind)) {
    throw Error(Errc::unsupported,
                "backend " + std::string(to_string(kind)) + " is not supported on this host");
  }
  static const Backend portable(*ops_for(BackendKind::portable));
  switch (kind) {
    case BackendKind::portable:
      return portable;
    case BackendKind::v4: {
      static const Backend v4(*ops_for(BackendKind::v4));
      return v4;
    }
    case BackendKind::v8: {
      static const Backend v8(*ops_for(BackendKind::v8));
      return v8;
    }
  }
  return portable;
}

const Backend& backend_select(BackendRequest request) {
  if (request == BackendRequest::automatic) {
    if (const char* env = std::getenv("MODEVAL_BACKEND"); env != nullptr && *env != '\0') {
      request = parse_backend_request(env);
    }
  }
  switch (request) {
    case BackendRequest::portable:
      return backend_for(BackendKind::portable);
    case BackendRequest::v4:
      return backend_for(BackendKind::v4);
    case BackendRequest::v8:
      return backend_for(BackendKind::v8);
    case BackendRequest::automatic:
      break;
  }
  for (BackendKind k : {BackendKind::v8, BackendKind::v4}) {
    if (backend_available(k)) return backend_for(k);
  }
  return backend_for(BackendKind::portable);
}

}  // namespace modeval
