// Copyright 2026 The modeval Authors
// SPDX-License-Identifier: Apache-2.0

// Text formats for polynomials and images, and the random instance
// generator.
//
// Polynomial file:
//
//   MODEVAL-POLY v1
//   p <prime>
//   n <variables>
//   s <terms>
//   <coeff> <d> <e> <x3 exponent> ... <xn exponent>     (s lines)
//
// Blank lines and lines starting with '#' are ignored.

#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "modeval/image.hpp"
#include "modeval/polynomial.hpp"
#include "modeval/prime_field.hpp"

namespace modeval {

inline constexpr std::string_view kPolyMagic = "MODEVAL-POLY v1";
/// Largest exponent accepted from a file; power tables are dense in it.
inline constexpr std::uint32_t kMaxFileExponent = 1u << 20;
/// Largest variable count accepted from a file.
inline constexpr std::size_t kMaxFileVariables = 1024;

struct ParsedPoly {
  PrimeModulus modulus;
  SparsePolynomial poly;
  std::vector<std::string> warnings;
};

/// Throws ParseError for malformed text, Error(not_prime / too_large /
/// too_small) for a bad modulus and Error(duplicate_monomial) for repeated
/// exponent vectors. Out-of-range coefficients are reduced and unsorted
/// terms sorted, each with a warning.
ParsedPoly parse_poly(std::istream& in);
ParsedPoly read_poly_file(const std::filesystem::path& path);

void write_poly(std::ostream& out, const SparsePolynomial& f, const PrimeModulus& m);
void write_poly_file(const std::filesystem::path& path, const SparsePolynomial& f,
                     const PrimeModulus& m);

enum class ImageFormat { csv, jsonl };

/// "csv" or "jsonl"; throws Error(invalid_argument) otherwise.
ImageFormat parse_image_format(std::string_view text);

/// One record per (t, d, e, c) in image order. CSV starts with "t,d,e,c".
void write_images(const ImageSet& images, std::ostream& out, ImageFormat format);

/// Reads records written by write_images into `count` images (t = 1..count).
/// Throws ParseError on malformed records or t outside [1, count].
ImageSet read_images(std::istream& in, ImageFormat format, std::size_t count);

struct GenSpec {
  std::size_t s = 1;
  std::size_t n = 3;
  std::uint32_t d = 0;
  std::uint64_t p = 0;
  std::uint64_t seed = 0;
};

/// s distinct monomials with exponents uniform in [0, d] and coefficients
/// uniform in [1, p - 1], in canonical order. Deterministic in spec.
/// Throws Error(invalid_argument) if s is 0 or exceeds (d + 1)^n, or n < 3.
SparsePolynomial generate(const GenSpec& spec);

}  // namespace modeval
