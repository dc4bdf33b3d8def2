// Copyright 2026 The modeval Authors
// SPDX-License-Identifier: Apache-2.0

#include <gtest/gtest.h>

#include <cstdint>
#include <vector>

#include "modeval/field_array.hpp"

namespace modeval {
namespace {

TEST(FieldArray, ZeroFilledAndAligned) {
  FieldArray a(13);
  EXPECT_EQ(a.size(), 13u);
  EXPECT_EQ(a.carrier(), Carrier::integer);
  for (std::size_t i = 0; i < a.size(); ++i) EXPECT_EQ(a.get(i), 0u);
  a.to_floating();
  EXPECT_EQ(reinterpret_cast<std::uintptr_t>(a.fp_data()) % FieldArray::kAlignment, 0u);
  // Padding lanes are readable and zero.
  for (std::size_t i = 13; i < 16; ++i) EXPECT_EQ(a.fp_data()[i], 0.0);
}

TEST(FieldArray, CarrierRoundTrip) {
  const std::vector<std::uint64_t> v{0, 1, 7, (std::uint64_t{1} << 50) - 1, 123456789};
  FieldArray a(v);
  a.to_floating();
  EXPECT_EQ(a.carrier(), Carrier::floating);
  EXPECT_EQ(a.fp_data()[3], static_cast<double>((std::uint64_t{1} << 50) - 1));
  for (std::size_t i = 0; i < v.size(); ++i) EXPECT_EQ(a.get(i), v[i]);
  a.set(2, 99);
  EXPECT_EQ(a.fp_data()[2], 99.0);
  a.to_integer();
  EXPECT_EQ(a.get(2), 99u);
  EXPECT_EQ(a.to_vector(), (std::vector<std::uint64_t>{0, 1, 99, v[3], v[4]}));
}

TEST(FieldArray, StatsCountBufferAllocations) {
  reset_field_array_stats();
  FieldArray a(10);
  FieldArray b(a);
  FieldArray c(std::move(b));
  FieldArray empty(0);
  c = a;
  const auto stats = field_array_stats();
  EXPECT_EQ(stats.arrays, 3u);
  EXPECT_EQ(stats.elements, 30u);
  EXPECT_EQ(b.size(), 0u);
}

TEST(FieldArray, FloatingScopeRestoresCarrier) {
  FieldArray a(std::vector<std::uint64_t>{5, 6});
  FieldArray b(std::vector<std::uint64_t>{7});
  b.to_floating();
  {
    FloatingScope scope{&a, &b};
    EXPECT_EQ(a.carrier(), Carrier::floating);
    EXPECT_EQ(a.fp_data()[1], 6.0);
  }
  EXPECT_EQ(a.carrier(), Carrier::integer);
  EXPECT_EQ(b.carrier(), Carrier::floating);
  EXPECT_EQ(a.get(0), 5u);
}

}  // namespace
}  // namespace modeval
