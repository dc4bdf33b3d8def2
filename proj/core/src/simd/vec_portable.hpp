// Copyright 2026 The modeval Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <array>
#include <bit>
#include <cmath>
#include <cstddef>
#include <cstdint>

#include "modeval/simd/backend.hpp"

namespace modeval::detail {
namespace {

/// Plain fixed-trip-count lane loops with the semantics of the hardware
/// backends. Conditional lanes are resolved with bit masks, not jumps.
template <std::size_t V>
struct PortableLanes {
  static_assert(V >= 1 && V <= kMaxLanes && std::has_single_bit(V));

  struct reg {
    std::array<double, V> v;
  };
  static constexpr std::size_t width = V;

  static reg zero() noexcept { return reg{}; }
  static reg broadcast(double x) noexcept {
    reg r;
    r.v.fill(x);
    return r;
  }
  static reg load(const double* p) noexcept { return loadu(p); }
  static reg loadu(const double* p) noexcept {
    reg r;
    for (std::size_t i = 0; i < V; ++i) r.v[i] = p[i];
    return r;
  }
  static void store(double* p, reg x) noexcept { storeu(p, x); }
  static void storeu(double* p, reg x) noexcept {
    for (std::size_t i = 0; i < V; ++i) p[i] = x.v[i];
  }
  static reg maskz_loadu(LaneMask mask, const double* p) noexcept {
    reg r{};
    for (std::size_t i = 0; i < V; ++i) {
      if (mask.test(i)) r.v[i] = p[i];
    }
    return r;
  }
  static void mask_storeu(double* p, LaneMask mask, reg x) noexcept {
    for (std::size_t i = 0; i < V; ++i) {
      if (mask.test(i)) p[i] = x.v[i];
    }
  }

  // All-ones when `cond` holds.
  static std::uint64_t lane_mask(bool cond) noexcept {
    return std::uint64_t{0} - static_cast<std::uint64_t>(cond);
  }
  static double select(std::uint64_t mask, double if_set, double if_clear) noexcept {
    return std::bit_cast<double>((std::bit_cast<std::uint64_t>(if_set) & mask) |
                                 (std::bit_cast<std::uint64_t>(if_clear) & ~mask));
  }

  static reg mulmod(reg x, reg y, reg p, reg u) noexcept {
    reg out;
    for (std::size_t i = 0; i < V; ++i) {
      const double h = x.v[i] * y.v[i];
      const double l = std::fma(x.v[i], y.v[i], -h);
      const double b = h * u.v[i];
      const double c = std::floor(b);
      const double d = std::fma(-c, p.v[i], h);
      double g = d + l;
      const std::uint64_t negative = lane_mask(g < 0.0);
      const std::uint64_t too_big = lane_mask(p.v[i] <= g);
      g = select(negative, g + p.v[i], g);
      g = select(too_big, g - p.v[i], g);
      out.v[i] = g;
    }
    return out;
  }

  static reg addmod(reg x, reg y, reg p) noexcept {
    reg out;
    for (std::size_t i = 0; i < V; ++i) {
      const double s = x.v[i] + y.v[i];
      out.v[i] = select(lane_mask(p.v[i] <= s), s - p.v[i], s);
    }
    return out;
  }

  // Same pairing as the shuffle trees: lane i with lane i + w, halving w.
  static double reduce_addmod(reg x, reg p) noexcept {
    for (std::size_t w = V / 2; w >= 1; w /= 2) {
      for (std::size_t i = 0; i < w; ++i) {
        const double s = x.v[i] + x.v[i + w];
        x.v[i] = select(lane_mask(p.v[0] <= s), s - p.v[0], s);
      }
    }
    return x.v[0];
  }
};

}  // namespace
}  // namespace modeval::detail
