// Copyright 2026 The modeval Authors
// SPDX-License-Identifier: Apache-2.0

#include "modeval/image.hpp"

#include <algorithm>

namespace modeval {

void ImageSink::add(std::size_t image, std::size_t group, std::uint64_t c) {
  if (c != 0) images_[image].terms.push_back({groups_[group].d, groups_[group].e, c});
}

ImageSet make_image_set(std::size_t count) {
  ImageSet images(count);
  for (std::size_t k = 0; k < count; ++k) images[k].t = k + 1;
  return images;
}

namespace {

std::string describe(const ImageTerm& term) {
  return "(" + std::to_string(term.d) + "," + std::to_string(term.e) + ")->" +
         std::to_string(term.c);
}

}  // namespace

std::optional<ImageDivergence> first_divergence(const ImageSet& expected,
                                                const ImageSet& actual) {
  const std::size_t common = std::min(expected.size(), actual.size());
  for (std::size_t k = 0; k < common; ++k) {
    const auto& want = expected[k];
    const auto& got = actual[k];
    if (want.t != got.t) {
      return ImageDivergence{want.t, 0,
                             "image index " + std::to_string(k) + " has t=" +
                                 std::to_string(got.t)};
    }
    const std::size_t n = std::min(want.terms.size(), got.terms.size());
    for (std::size_t i = 0; i < n; ++i) {
      if (want.terms[i] != got.terms[i]) {
        return ImageDivergence{want.t, i,
                               "expected " + describe(want.terms[i]) + ", got " +
                                   describe(got.terms[i])};
      }
    }
    if (want.terms.size() != got.terms.size()) {
      return ImageDivergence{want.t, n,
                             "expected " + std::to_string(want.terms.size()) +
                                 " terms, got " + std::to_string(got.terms.size())};
    }
  }
  if (expected.size() != actual.size()) {
    return ImageDivergence{common + 1, 0,
                           "expected " + std::to_string(expected.size()) +
                               " images, got " + std::to_string(actual.size())};
  }
  return std::nullopt;
}

}  // namespace modeval
