// Copyright 2026 The modeval Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "modeval/polynomial.hpp"

namespace modeval {

struct ImageTerm {
  std::uint32_t d = 0;
  std::uint32_t e = 0;
  std::uint64_t c = 0;

  friend bool operator==(const ImageTerm&, const ImageTerm&) = default;
};

/// b_t(x1, x2) = f(x1, x2, beta^t): nonzero terms in descending (d, e) order.
struct BivariateImage {
  std::uint64_t t = 0;
  std::vector<ImageTerm> terms;

  friend bool operator==(const BivariateImage&, const BivariateImage&) = default;
};

/// Images for t = 1..T; element k holds t = k + 1.
using ImageSet = std::vector<BivariateImage>;

/// T empty images with their t fields filled in.
ImageSet make_image_set(std::size_t count);

struct ImageDivergence {
  std::uint64_t t = 0;
  std::size_t position = 0;  // index into the image's term list
  std::string detail;
};

/// First place where `actual` differs from `expected`, or nullopt.
std::optional<ImageDivergence> first_divergence(const ImageSet& expected,
                                                const ImageSet& actual);

/// Kernel output adapter: records group coefficients into images, dropping
/// zeros.
class ImageSink {
 public:
  ImageSink(std::span<BivariateImage> images, std::span<const Bidegree> groups) noexcept
      : images_(images), groups_(groups) {}

  /// Appends (group bidegree, c) to images[image] unless c is zero.
  void add(std::size_t image, std::size_t group, std::uint64_t c);

  std::size_t size() const noexcept { return images_.size(); }

 private:
  std::span<BivariateImage> images_;
  std::span<const Bidegree> groups_;
};

}  // namespace modeval
