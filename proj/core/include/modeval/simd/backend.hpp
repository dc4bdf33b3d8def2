// Copyright 2026 The modeval Authors
// SPDX-License-Identifier: Apache-2.0

// Runtime-selected vector backends for F_p arithmetic on the double carrier.
//
// Three backends share one kernel source: an 8-lane portable loop that runs
// anywhere, a 4-lane AVX2/FMA backend, and an 8-lane AVX-512 backend. All of
// them reduce without branches and produce bit-identical results.

#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

#include "modeval/image.hpp"
#include "modeval/prime_field.hpp"

namespace modeval {

enum class BackendKind { portable, v4, v8 };
enum class BackendRequest { automatic, portable, v4, v8 };

inline constexpr std::size_t kMaxLanes = 8;

/// Lane-selection flags; bit i selects lane i.
struct LaneMask {
  std::uint32_t bits = 0;

  static constexpr LaneMask prefix(std::size_t n) noexcept {
    return {n >= 32 ? ~std::uint32_t{0} : (std::uint32_t{1} << n) - 1};
  }
  constexpr bool test(std::size_t lane) const noexcept { return (bits >> lane) & 1u; }
};

/// Up to kMaxLanes exact doubles in [0, p); a backend uses its first width()
/// lanes.
struct FieldVector {
  std::array<double, kMaxLanes> lanes{};

  friend bool operator==(const FieldVector&, const FieldVector&) = default;
};

/// Shape of one blocked pass: ti independent chains, td dependent steps, and
/// an unroll factor over consecutive vectors.
struct BlockShape {
  std::size_t ti = 1;
  std::size_t td = 1;
  std::size_t unroll = 1;
};

namespace detail {

struct BackendOps {
  BackendKind kind;
  const char* name;
  std::size_t width;

  // Element-wise array kernels on the double carrier (out may alias x).
  void (*mul_arrays)(const double* x, const double* y, double* out, std::size_t n,
                     const PrimeModulus& m);
  void (*add_arrays)(const double* x, const double* y, double* out, std::size_t n,
                     const PrimeModulus& m);
  // Same, converting from and to the integer carrier around each vector.
  void (*mul_arrays_conv)(const std::uint64_t* x, const std::uint64_t* y, std::uint64_t* out,
                          std::size_t n, const PrimeModulus& m);
  void (*add_arrays_conv)(const std::uint64_t* x, const std::uint64_t* y, std::uint64_t* out,
                          std::size_t n, const PrimeModulus& m);
  // Scalar FMA loops compiled for this backend's instruction set.
  void (*scalar_mul_arrays)(const double* x, const double* y, double* out, std::size_t n,
                            const PrimeModulus& m);
  void (*scalar_add_arrays)(const double* x, const double* y, double* out, std::size_t n,
                            const PrimeModulus& m);
  void (*scalar_mul_arrays_conv)(const std::uint64_t* x, const std::uint64_t* y,
                                 std::uint64_t* out, std::size_t n, const PrimeModulus& m);
  void (*scalar_add_arrays_conv)(const std::uint64_t* x, const std::uint64_t* y,
                                 std::uint64_t* out, std::size_t n, const PrimeModulus& m);

  double (*reduce)(const double* lanes, const PrimeModulus& m);
  void (*masked_accumulate)(double* a, const double* mvals, LaneMask mask, double* c_lanes,
                            const PrimeModulus& m);

  void (*eval_simd)(double* a, const double* mvals, std::span<const std::size_t> offsets,
                    std::size_t count, const PrimeModulus& m, ImageSink& out);
  void (*blocked)(double* const* lambdas, const double* gamma,
                  std::span<const std::size_t> offsets, const PrimeModulus& m, BlockShape shape,
                  ImageSink& out, std::size_t first_image);
  void (*noalloc)(double* a, const double* mvals, std::span<const std::size_t> offsets,
                  const PrimeModulus& m, std::size_t td, std::size_t unroll, ImageSink& out,
                  std::size_t first_image);
  // Whether `blocked` / `noalloc` have a fully unrolled specialization.
  bool (*specialized)(BlockShape shape);
};

}  // namespace detail

/// Handle to one backend. Obtain through backend_select().
class Backend {
 public:
  explicit Backend(const detail::BackendOps& ops) noexcept : ops_(&ops) {}

  BackendKind kind() const noexcept { return ops_->kind; }
  std::string_view name() const noexcept { return ops_->name; }
  std::size_t width() const noexcept { return ops_->width; }

  /// Lane-wise mulmod_fp on the first width() lanes.
  FieldVector vmulmod(const FieldVector& x, const FieldVector& y, const PrimeModulus& m) const;
  /// Lane-wise addmod_fp on the first width() lanes.
  FieldVector vaddmod(const FieldVector& x, const FieldVector& y, const PrimeModulus& m) const;
  /// Modular sum of the first width() lanes by a shuffle tree.
  double vreduce_addmod(const FieldVector& x, const PrimeModulus& m) const;

  /// For each selected lane i: a[start+i] <- a[start+i] * mvals[start+i] and
  /// c[i] <- c[i] + a[start+i]. Unselected lanes are neither read nor
  /// written and leave c unchanged.
  void masked_vmulmod_accumulate(std::span<double> a, std::span<const double> mvals,
                                 std::size_t start, LaneMask mask, FieldVector& c,
                                 const PrimeModulus& m) const;

  void mulmod_arrays(std::span<const double> x, std::span<const double> y,
                     std::span<double> out, const PrimeModulus& m) const;
  void addmod_arrays(std::span<const double> x, std::span<const double> y,
                     std::span<double> out, const PrimeModulus& m) const;

  const detail::BackendOps& ops() const noexcept { return *ops_; }

 private:
  const detail::BackendOps* ops_;
};

std::string_view to_string(BackendKind kind) noexcept;
std::string_view to_string(BackendRequest request) noexcept;
/// Accepts auto, portable, v4, v8. Throws Error(invalid_argument) otherwise.
BackendRequest parse_backend_request(std::string_view text);

bool backend_available(BackendKind kind) noexcept;
std::vector<BackendKind> available_backends();

/// `automatic` picks the widest backend the CPU supports, after honouring
/// the MODEVAL_BACKEND environment variable when it is set. Throws
/// Error(unsupported) for an explicit request the host cannot run.
const Backend& backend_select(BackendRequest request = BackendRequest::automatic);
const Backend& backend_for(BackendKind kind);

}  // namespace modeval
