// Copyright 2026 The modeval Authors
// SPDX-License-Identifier: Apache-2.0

// Evaluation kernels shared by every backend. Each backend translation unit
// includes this header once, with its own instruction-set flags, and
// instantiates make_ops<> for its lane type. Everything here has internal
// linkage so that code compiled for one instruction set is never merged with
// another unit's copy at link time.

#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <span>
#include <type_traits>
#include <utility>
#include <vector>

#include "modeval/image.hpp"
#include "modeval/prime_field.hpp"
#include "modeval/simd/backend.hpp"

#if defined(__GNUC__) && !defined(__clang__)
#define MODEVAL_NO_AUTOVEC __attribute__((optimize("no-tree-vectorize")))
#else
#define MODEVAL_NO_AUTOVEC
#endif

// Register types such as __m256d carry alignment attributes that GCC
// reports as dropped when used as template arguments; the arrays below are
// still correctly aligned.
#if defined(__GNUC__) && !defined(__clang__)
#pragma GCC diagnostic ignored "-Wignored-attributes"
#endif

namespace modeval::detail {
namespace {

inline constexpr std::array<std::size_t, 5> kTuningGrid{1, 2, 4, 8, 16};

constexpr int grid_slot(std::size_t v) noexcept {
  for (std::size_t i = 0; i < kTuningGrid.size(); ++i) {
    if (kTuningGrid[i] == v) return static_cast<int>(i);
  }
  return -1;
}

// Calls f(0), ..., f(N - 1) with compile-time indices.
template <std::size_t N, class F>
inline void unrolled(F&& f) {
  [&]<std::size_t... K>(std::index_sequence<K...>) {
    (f(std::integral_constant<std::size_t, K>{}), ...);
  }(std::make_index_sequence<N>{});
}

// Fully unrolled when N is known (N != 0), a plain loop over n otherwise.
template <std::size_t N, class F>
inline void repeat(std::size_t n, F&& f) {
  if constexpr (N != 0) {
    unrolled<N>(f);
  } else {
    for (std::size_t k = 0; k < n; ++k) f(k);
  }
}

// Register file for N vectors, or a heap array when N is a runtime value.
template <class T, std::size_t N>
class Slots {
 public:
  explicit Slots(std::size_t n) {
    if constexpr (N == 0) items_.resize(n);
  }
  T& operator[](std::size_t i) noexcept { return items_[i]; }

 private:
  std::conditional_t<N != 0, std::array<T, N>, std::vector<T>> items_;
};

struct EdgeSplit {
  std::size_t head;        // masked lanes before the first aligned index
  std::size_t body_begin;  // aligned
  std::size_t body_end;    // aligned, whole vectors only
  std::size_t tail;        // masked lanes after body_end
};

constexpr EdgeSplit split_range(std::size_t begin, std::size_t end, std::size_t width) noexcept {
  const std::size_t len = end - begin;
  const std::size_t head = std::min((width - begin % width) % width, len);
  const std::size_t body_begin = begin + head;
  const std::size_t body_end = body_begin + (end - body_begin) / width * width;
  return {head, body_begin, body_end, end - body_end};
}

// Scalar FP kernels, repeated here so each backend compiles them with its
// own flags. Steps match mulmod_fp / addmod_fp exactly.
inline double scalar_mulmod(double x, double y, double p, double u) noexcept {
  const double h = x * y;
  const double l = std::fma(x, y, -h);
  const double c = std::floor(h * u);
  const double g = std::fma(-c, p, h) + l;
  if (g >= p) return g - p;
  if (g < 0.0) return g + p;
  return g;
}

inline double scalar_addmod(double x, double y, double p) noexcept {
  const double s = x + y;
  return s >= p ? s - p : s;
}

template <class Ops>
struct Kernels {
  using reg = typename Ops::reg;
  static constexpr std::size_t V = Ops::width;

  struct Mod {
    reg p;
    reg u;
    explicit Mod(const PrimeModulus& m) noexcept
        : p(Ops::broadcast(m.fp())), u(Ops::broadcast(m.inverse())) {}
  };

  // ---- element-wise arrays -------------------------------------------------

  static void mul_arrays(const double* x, const double* y, double* out, std::size_t n,
                         const PrimeModulus& m) {
    const Mod r(m);
    std::size_t i = 0;
    for (; i + V <= n; i += V) {
      Ops::storeu(out + i, Ops::mulmod(Ops::loadu(x + i), Ops::loadu(y + i), r.p, r.u));
    }
    if (i < n) {
      const LaneMask mask = LaneMask::prefix(n - i);
      const reg z = Ops::mulmod(Ops::maskz_loadu(mask, x + i), Ops::maskz_loadu(mask, y + i),
                                r.p, r.u);
      Ops::mask_storeu(out + i, mask, z);
    }
  }

  static void add_arrays(const double* x, const double* y, double* out, std::size_t n,
                         const PrimeModulus& m) {
    const Mod r(m);
    std::size_t i = 0;
    for (; i + V <= n; i += V) {
      Ops::storeu(out + i, Ops::addmod(Ops::loadu(x + i), Ops::loadu(y + i), r.p));
    }
    if (i < n) {
      const LaneMask mask = LaneMask::prefix(n - i);
      const reg z = Ops::addmod(Ops::maskz_loadu(mask, x + i), Ops::maskz_loadu(mask, y + i), r.p);
      Ops::mask_storeu(out + i, mask, z);
    }
  }

  template <bool kMul>
  static void conv_arrays(const std::uint64_t* x, const std::uint64_t* y, std::uint64_t* out,
                          std::size_t n, const PrimeModulus& m) {
    const Mod r(m);
    alignas(64) double xs[V];
    alignas(64) double ys[V];
    alignas(64) double zs[V];
    for (std::size_t i = 0; i < n; i += V) {
      const std::size_t count = std::min(V, n - i);
      for (std::size_t k = 0; k < V; ++k) {
        xs[k] = k < count ? static_cast<double>(x[i + k]) : 0.0;
        ys[k] = k < count ? static_cast<double>(y[i + k]) : 0.0;
      }
      const reg a = Ops::load(xs);
      const reg b = Ops::load(ys);
      if constexpr (kMul) {
        Ops::store(zs, Ops::mulmod(a, b, r.p, r.u));
      } else {
        Ops::store(zs, Ops::addmod(a, b, r.p));
      }
      for (std::size_t k = 0; k < count; ++k) out[i + k] = static_cast<std::uint64_t>(zs[k]);
    }
  }

  MODEVAL_NO_AUTOVEC static void scalar_mul_arrays(const double* x, const double* y, double* out,
                                                   std::size_t n, const PrimeModulus& m) {
    const double p = m.fp();
    const double u = m.inverse();
    for (std::size_t i = 0; i < n; ++i) out[i] = scalar_mulmod(x[i], y[i], p, u);
  }

  MODEVAL_NO_AUTOVEC static void scalar_add_arrays(const double* x, const double* y, double* out,
                                                   std::size_t n, const PrimeModulus& m) {
    const double p = m.fp();
    for (std::size_t i = 0; i < n; ++i) out[i] = scalar_addmod(x[i], y[i], p);
  }

  MODEVAL_NO_AUTOVEC static void scalar_mul_arrays_conv(const std::uint64_t* x,
                                                        const std::uint64_t* y,
                                                        std::uint64_t* out, std::size_t n,
                                                        const PrimeModulus& m) {
    const double p = m.fp();
    const double u = m.inverse();
    for (std::size_t i = 0; i < n; ++i) {
      out[i] = static_cast<std::uint64_t>(
          scalar_mulmod(static_cast<double>(x[i]), static_cast<double>(y[i]), p, u));
    }
  }

  MODEVAL_NO_AUTOVEC static void scalar_add_arrays_conv(const std::uint64_t* x,
                                                        const std::uint64_t* y,
                                                        std::uint64_t* out, std::size_t n,
                                                        const PrimeModulus& m) {
    const double p = m.fp();
    for (std::size_t i = 0; i < n; ++i) {
      out[i] = static_cast<std::uint64_t>(
          scalar_addmod(static_cast<double>(x[i]), static_cast<double>(y[i]), p));
    }
  }

  static double reduce(const double* lanes, const PrimeModulus& m) {
    return Ops::reduce_addmod(Ops::loadu(lanes), Ops::broadcast(m.fp()));
  }

  // One masked Hadamard step plus accumulation: the ragged-edge body.
  static reg step_masked(double* a, const double* mv, LaneMask mask, reg c, const Mod& r) {
    const reg av = Ops::mulmod(Ops::maskz_loadu(mask, a), Ops::maskz_loadu(mask, mv), r.p, r.u);
    Ops::mask_storeu(a, mask, av);
    return Ops::addmod(c, av, r.p);
  }

  static void masked_accumulate(double* a, const double* mv, LaneMask mask, double* c_lanes,
                                const PrimeModulus& m) {
    const Mod r(m);
    Ops::storeu(c_lanes, step_masked(a, mv, mask, Ops::loadu(c_lanes), r));
  }

  static void emit(ImageSink& out, std::size_t image, std::size_t group, double c) {
    if (c != 0.0) out.add(image, group, static_cast<std::uint64_t>(c));
  }

  // ---- single evaluation per pass ------------------------------------------

  static void eval_simd(double* a, const double* mv, std::span<const std::size_t> offsets,
                        std::size_t count, const PrimeModulus& m, ImageSink& out) {
    const Mod r(m);
    const std::size_t groups = offsets.size() - 1;
    for (std::size_t t = 0; t < count; ++t) {
      for (std::size_t g = 0; g < groups; ++g) {
        const EdgeSplit sp = split_range(offsets[g], offsets[g + 1], V);
        reg c = Ops::zero();
        if (sp.head != 0) {
          c = step_masked(a + offsets[g], mv + offsets[g], LaneMask::prefix(sp.head), c, r);
        }
        for (std::size_t j = sp.body_begin; j < sp.body_end; j += V) {
          const reg av = Ops::mulmod(Ops::load(a + j), Ops::load(mv + j), r.p, r.u);
          Ops::store(a + j, av);
          c = Ops::addmod(c, av, r.p);
        }
        if (sp.tail != 0) {
          c = step_masked(a + sp.body_end, mv + sp.body_end, LaneMask::prefix(sp.tail), c, r);
        }
        emit(out, t, g, Ops::reduce_addmod(c, r.p));
      }
    }
  }

  // ---- independent x dependent evaluations ----------------------------------
  //
  // On entry lam[k] holds a * m^(first + k + 1) for k < ti. The pass emits
  // images first + ki + kd * ti for ki < ti, kd < td, and leaves
  // lam[k] = a * m^(first + k + 1 + ti * td) when gamma = m^ti.

  template <std::size_t kTi, std::size_t kTd, std::size_t kM>
  static void blocked(double* const* lam, const double* gamma,
                      std::span<const std::size_t> offsets, const PrimeModulus& m,
                      BlockShape shape, ImageSink& out, std::size_t first) {
    const Mod r(m);
    const std::size_t ti = kTi != 0 ? kTi : shape.ti;
    const std::size_t td = kTd != 0 ? kTd : shape.td;
    const std::size_t mu = kM != 0 ? kM : shape.unroll;
    Slots<reg, kTi * kTd> c(ti * td);
    Slots<reg, kTi * kM> lv(ti * mu);  // lv[u * ti + ki]
    Slots<reg, kM> gv(mu);

    auto advance = [&](reg& l, const reg& gm, std::size_t ki, std::size_t kd) {
      reg& acc = c[ki * td + kd];
      acc = Ops::addmod(acc, l, r.p);
      l = Ops::mulmod(l, gm, r.p, r.u);
    };

    auto masked = [&](std::size_t j, LaneMask mask) {
      const reg gm = Ops::maskz_loadu(mask, gamma + j);
      repeat<kTi>(ti, [&](std::size_t ki) { lv[ki] = Ops::maskz_loadu(mask, lam[ki] + j); });
      repeat<kTd>(td, [&](std::size_t kd) {
        repeat<kTi>(ti, [&](std::size_t ki) { advance(lv[ki], gm, ki, kd); });
      });
      repeat<kTi>(ti, [&](std::size_t ki) { Ops::mask_storeu(lam[ki] + j, mask, lv[ki]); });
    };

    auto full = [&]<std::size_t kU>(std::size_t j, std::size_t uc) {
      repeat<kU>(uc, [&](std::size_t u) {
        gv[u] = Ops::load(gamma + j + u * V);
        repeat<kTi>(ti, [&](std::size_t ki) { lv[u * ti + ki] = Ops::load(lam[ki] + j + u * V); });
      });
      repeat<kTd>(td, [&](std::size_t kd) {
        repeat<kU>(uc, [&](std::size_t u) {
          repeat<kTi>(ti, [&](std::size_t ki) { advance(lv[u * ti + ki], gv[u], ki, kd); });
        });
      });
      repeat<kU>(uc, [&](std::size_t u) {
        repeat<kTi>(ti, [&](std::size_t ki) { Ops::store(lam[ki] + j + u * V, lv[u * ti + ki]); });
      });
    };

    const std::size_t groups = offsets.size() - 1;
    for (std::size_t g = 0; g < groups; ++g) {
      repeat<kTi * kTd>(ti * td, [&](std::size_t k) { c[k] = Ops::zero(); });
      const EdgeSplit sp = split_range(offsets[g], offsets[g + 1], V);
      if (sp.head != 0) masked(offsets[g], LaneMask::prefix(sp.head));
      std::size_t j = sp.body_begin;
      for (; j + mu * V <= sp.body_end; j += mu * V) full.template operator()<kM>(j, mu);
      for (; j < sp.body_end; j += V) full.template operator()<1>(j, 1);
      if (sp.tail != 0) masked(sp.body_end, LaneMask::prefix(sp.tail));
      repeat<kTd>(td, [&](std::size_t kd) {
        repeat<kTi>(ti, [&](std::size_t ki) {
          emit(out, first + ki + kd * ti, g, Ops::reduce_addmod(c[ki * td + kd], r.p));
        });
      });
    }
  }

  // ---- dependent evaluations only, in place on a ---------------------------
  //
  // Emits images first .. first + td - 1 and leaves a <- a * m^td.

  template <std::size_t kTd, std::size_t kM>
  static void noalloc(double* a, const double* mv, std::span<const std::size_t> offsets,
                      const PrimeModulus& m, std::size_t td_rt, std::size_t mu_rt,
                      ImageSink& out, std::size_t first) {
    const Mod r(m);
    const std::size_t td = kTd != 0 ? kTd : td_rt;
    const std::size_t mu = kM != 0 ? kM : mu_rt;
    Slots<reg, kTd> c(td);
    Slots<reg, kM> av(mu);
    Slots<reg, kM> mvv(mu);

    auto masked = [&](std::size_t j, LaneMask mask) {
      reg x = Ops::maskz_loadu(mask, a + j);
      const reg y = Ops::maskz_loadu(mask, mv + j);
      repeat<kTd>(td, [&](std::size_t kd) {
        x = Ops::mulmod(x, y, r.p, r.u);
        c[kd] = Ops::addmod(c[kd], x, r.p);
      });
      Ops::mask_storeu(a + j, mask, x);
    };

    // All multiplies of one dependent step, then all its additions.
    auto full = [&]<std::size_t kU>(std::size_t j, std::size_t uc) {
      repeat<kU>(uc, [&](std::size_t u) {
        av[u] = Ops::load(a + j + u * V);
        mvv[u] = Ops::load(mv + j + u * V);
      });
      repeat<kTd>(td, [&](std::size_t kd) {
        repeat<kU>(uc, [&](std::size_t u) { av[u] = Ops::mulmod(av[u], mvv[u], r.p, r.u); });
        repeat<kU>(uc, [&](std::size_t u) { c[kd] = Ops::addmod(c[kd], av[u], r.p); });
      });
      repeat<kU>(uc, [&](std::size_t u) { Ops::store(a + j + u * V, av[u]); });
    };

    const std::size_t groups = offsets.size() - 1;
    for (std::size_t g = 0; g < groups; ++g) {
      repeat<kTd>(td, [&](std::size_t kd) { c[kd] = Ops::zero(); });
      const EdgeSplit sp = split_range(offsets[g], offsets[g + 1], V);
      if (sp.head != 0) masked(offsets[g], LaneMask::prefix(sp.head));
      std::size_t j = sp.body_begin;
      for (; j + mu * V <= sp.body_end; j += mu * V) full.template operator()<kM>(j, mu);
      for (; j < sp.body_end; j += V) full.template operator()<1>(j, 1);
      if (sp.tail != 0) masked(sp.body_end, LaneMask::prefix(sp.tail));
      repeat<kTd>(td, [&](std::size_t kd) {
        emit(out, first + kd, g, Ops::reduce_addmod(c[kd], r.p));
      });
    }
  }
};

// ---- dispatch over the tuning grid -------------------------------------------

using BlockedFn = void (*)(double* const*, const double*, std::span<const std::size_t>,
                           const PrimeModulus&, BlockShape, ImageSink&, std::size_t);
using NoallocFn = void (*)(double*, const double*, std::span<const std::size_t>,
                           const PrimeModulus&, std::size_t, std::size_t, ImageSink&,
                           std::size_t);

template <class Ops, bool kSpecialize>
struct Dispatch {
  using K = Kernels<Ops>;
  static constexpr std::size_t G = kTuningGrid.size();

  static constexpr auto blocked_table = []<std::size_t... I>(std::index_sequence<I...>) {
    return std::array<BlockedFn, sizeof...(I)>{
        &K::template blocked<kTuningGrid[I / (G * G)], kTuningGrid[I / G % G],
                             kTuningGrid[I % G]>...};
  }(std::make_index_sequence<kSpecialize ? G * G * G : 0>{});

  static constexpr auto noalloc_table = []<std::size_t... I>(std::index_sequence<I...>) {
    return std::array<NoallocFn, sizeof...(I)>{
        &K::template noalloc<kTuningGrid[I / G], kTuningGrid[I % G]>...};
  }(std::make_index_sequence<kSpecialize ? G * G : 0>{});

  static bool specialized(BlockShape s) noexcept {
    return kSpecialize && grid_slot(s.ti) >= 0 && grid_slot(s.td) >= 0 &&
           grid_slot(s.unroll) >= 0;
  }

  static void blocked(double* const* lam, const double* gamma,
                      std::span<const std::size_t> offsets, const PrimeModulus& m,
                      BlockShape shape, ImageSink& out, std::size_t first) {
    if constexpr (kSpecialize) {
      if (specialized(shape)) {
        const auto idx = static_cast<std::size_t>(grid_slot(shape.ti)) * G * G +
                         static_cast<std::size_t>(grid_slot(shape.td)) * G +
                         static_cast<std::size_t>(grid_slot(shape.unroll));
        blocked_table[idx](lam, gamma, offsets, m, shape, out, first);
        return;
      }
    }
    K::template blocked<0, 0, 0>(lam, gamma, offsets, m, shape, out, first);
  }

  static void noalloc(double* a, const double* mv, std::span<const std::size_t> offsets,
                      const PrimeModulus& m, std::size_t td, std::size_t unroll, ImageSink& out,
                      std::size_t first) {
    if constexpr (kSpecialize) {
      if (grid_slot(td) >= 0 && grid_slot(unroll) >= 0) {
        const auto idx = static_cast<std::size_t>(grid_slot(td)) * G +
                         static_cast<std::size_t>(grid_slot(unroll));
        noalloc_table[idx](a, mv, offsets, m, td, unroll, out, first);
        return;
      }
    }
    K::template noalloc<0, 0>(a, mv, offsets, m, td, unroll, out, first);
  }
};

template <class Ops, bool kSpecialize>
constexpr BackendOps make_ops(BackendKind kind, const char* name) noexcept {
  using K = Kernels<Ops>;
  using D = Dispatch<Ops, kSpecialize>;
  return BackendOps{
      kind,
      name,
      Ops::width,
      &K::mul_arrays,
      &K::add_arrays,
      &K::template conv_arrays<true>,
      &K::template conv_arrays<false>,
      &K::scalar_mul_arrays,
      &K::scalar_add_arrays,
      &K::scalar_mul_arrays_conv,
      &K::scalar_add_arrays_conv,
      &K::reduce,
      &K::masked_accumulate,
      &K::eval_simd,
      &D::blocked,
      &D::noalloc,
      &D::specialized,
  };
}

}  // namespace
}  // namespace modeval::detail
