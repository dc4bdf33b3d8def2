// Copyright 2026 The modeval Authors
// SPDX-License-Identifier: Apache-2.0

#include "modeval/field_array.hpp"

#include <algorithm>
#include <new>

namespace modeval {

namespace {
thread_local FieldArrayStats g_stats;
}  // namespace

FieldArrayStats field_array_stats() noexcept { return g_stats; }
void reset_field_array_stats() noexcept { g_stats = {}; }

void FieldArray::AlignedDelete::operator()(double* p) const noexcept {
  ::operator delete[](p, std::align_val_t{kAlignment});
}

void FieldArray::allocate(std::size_t size) {
  size_ = size;
  carrier_ = Carrier::integer;
  if (size == 0) {
    data_.reset();
    return;
  }
  const std::size_t padded = (size + kPadLanes - 1) / kPadLanes * kPadLanes;
  auto* raw = static_cast<double*>(
      ::operator new[](padded * sizeof(double), std::align_val_t{kAlignment}));
  std::fill_n(raw, padded, 0.0);
  data_.reset(raw);
  ++g_stats.arrays;
  g_stats.elements += size;
}

FieldArray::FieldArray(std::size_t size) { allocate(size); }

FieldArray::FieldArray(std::span<const std::uint64_t> values) {
  allocate(values.size());
  assign(values);
}

FieldArray::FieldArray(const FieldArray& other) {
  allocate(other.size_);
  carrier_ = other.carrier_;
  std::copy_n(other.data_.get(), size_, data_.get());
}

FieldArray& FieldArray::operator=(const FieldArray& other) {
  if (this != &other) {
    FieldArray copy(other);
    *this = std::move(copy);
  }
  return *this;
}

void FieldArray::assign(std::span<const std::uint64_t> values) noexcept {
  assert(values.size() == size_);
  for (std::size_t i = 0; i < size_; ++i) set(i, values[i]);
}

void FieldArray::to_floating() noexcept {
  if (carrier_ == Carrier::floating) return;
  double* d = data_.get();
  for (std::size_t i = 0; i < size_; ++i) {
    d[i] = static_cast<double>(std::bit_cast<std::uint64_t>(d[i]));
  }
  carrier_ = Carrier::floating;
}

void FieldArray::to_integer() noexcept {
  if (carrier_ == Carrier::integer) return;
  double* d = data_.get();
  for (std::size_t i = 0; i < size_; ++i) {
    d[i] = std::bit_cast<double>(static_cast<std::uint64_t>(d[i]));
  }
  carrier_ = Carrier::integer;
}

std::vector<std::uint64_t> FieldArray::to_vector() const {
  std::vector<std::uint64_t> out(size_);
  for (std::size_t i = 0; i < size_; ++i) out[i] = get(i);
  return out;
}

FloatingScope::FloatingScope(std::initializer_list<FieldArray*> arrays) {
  saved_.reserve(arrays.size());
  for (FieldArray* a : arrays) {
    saved_.emplace_back(a, a->carrier());
    a->to_floating();
  }
}

FloatingScope::~FloatingScope() {
  for (auto& [array, carrier] : saved_) {
    if (carrier == Carrier::integer) array->to_integer();
  }
}

}  // namespace modeval
