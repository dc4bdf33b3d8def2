// Copyright 2026 The modeval Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <bit>
#include <cassert>
#include <cstddef>
#include <cstdint>
#include <memory>
#include <span>
#include <utility>
#include <vector>

namespace modeval {

/// Which representation the slots of a FieldArray currently hold.
enum class Carrier : std::uint8_t { integer, floating };

/// Running totals of FieldArray buffer allocations on the calling thread.
struct FieldArrayStats {
  std::uint64_t arrays = 0;
  std::uint64_t elements = 0;
};

FieldArrayStats field_array_stats() noexcept;
void reset_field_array_stats() noexcept;

/// A 64-byte aligned array of field elements that can be switched in place
/// between the integer carrier and the exact-double carrier.
///
/// Every slot is a double. In the integer carrier a slot holds the bit
/// pattern of the 64-bit integer; in the floating carrier it holds the same
/// integer as an exact double value. Storage is padded to a whole number of
/// 8-lane vectors so full-width loads past the logical end stay in bounds.
class FieldArray {
 public:
  static constexpr std::size_t kAlignment = 64;
  static constexpr std::size_t kPadLanes = 8;

  FieldArray() = default;
  /// Zero-filled array in the integer carrier.
  explicit FieldArray(std::size_t size);
  explicit FieldArray(std::span<const std::uint64_t> values);

  FieldArray(const FieldArray& other);
  FieldArray& operator=(const FieldArray& other);
  FieldArray(FieldArray&& other) noexcept
      : data_(std::move(other.data_)),
        size_(std::exchange(other.size_, 0)),
        carrier_(std::exchange(other.carrier_, Carrier::integer)) {}
  FieldArray& operator=(FieldArray&& other) noexcept {
    data_ = std::move(other.data_);
    size_ = std::exchange(other.size_, 0);
    carrier_ = std::exchange(other.carrier_, Carrier::integer);
    return *this;
  }

  std::size_t size() const noexcept { return size_; }
  bool empty() const noexcept { return size_ == 0; }
  Carrier carrier() const noexcept { return carrier_; }

  std::uint64_t get(std::size_t i) const noexcept {
    assert(i < size_);
    return carrier_ == Carrier::integer ? std::bit_cast<std::uint64_t>(data_[i])
                                        : static_cast<std::uint64_t>(data_[i]);
  }

  void set(std::size_t i, std::uint64_t v) noexcept {
    assert(i < size_);
    data_[i] = carrier_ == Carrier::integer ? std::bit_cast<double>(v)
                                            : static_cast<double>(v);
  }

  /// Overwrites the contents from integers without changing the carrier.
  void assign(std::span<const std::uint64_t> values) noexcept;

  void to_floating() noexcept;
  void to_integer() noexcept;

  /// Raw slots; only meaningful in the floating carrier.
  double* fp_data() noexcept {
    assert(carrier_ == Carrier::floating);
    return data_.get();
  }
  const double* fp_data() const noexcept {
    assert(carrier_ == Carrier::floating);
    return data_.get();
  }

  std::vector<std::uint64_t> to_vector() const;

 private:
  struct AlignedDelete {
    void operator()(double* p) const noexcept;
  };

  void allocate(std::size_t size);

  std::unique_ptr<double[], AlignedDelete> data_;
  std::size_t size_ = 0;
  Carrier carrier_ = Carrier::integer;
};

/// Switches arrays to the floating carrier for the lifetime of the scope and
/// restores each one's previous carrier afterwards.
class FloatingScope {
 public:
  explicit FloatingScope(std::initializer_list<FieldArray*> arrays);
  ~FloatingScope();

  FloatingScope(const FloatingScope&) = delete;
  FloatingScope& operator=(const FloatingScope&) = delete;

 private:
  std::vector<std::pair<FieldArray*, Carrier>> saved_;
};

}  // namespace modeval
