// Copyright 2026 The modeval Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "modeval/prime_field.hpp"

namespace modeval {

/// Exponents (d, e) of x1 and x2 in one term.
struct Bidegree {
  std::uint32_t d = 0;
  std::uint32_t e = 0;

  friend auto operator<=>(const Bidegree&, const Bidegree&) = default;
};

/// f = sum_i a_i x1^{d_i} x2^{e_i} M_i(x3, ..., xn) with n >= 3.
///
/// Terms are stored as a coefficient plus a row of n exponents. A polynomial
/// is in canonical order when its rows are strictly decreasing in the
/// lexicographic order x1 > x2 > ... > xn, which makes terms sharing a
/// bidegree contiguous.
class SparsePolynomial {
 public:
  /// Throws Error(invalid_argument) when nvars < 3.
  explicit SparsePolynomial(std::size_t nvars);

  std::size_t nvars() const noexcept { return nvars_; }
  /// Number of variables substituted during evaluation (n - 2).
  std::size_t nevaluated() const noexcept { return nvars_ - 2; }
  std::size_t size() const noexcept { return coeffs_.size(); }
  bool empty() const noexcept { return coeffs_.empty(); }

  /// Appends a term. Throws Error(invalid_argument) for a zero coefficient or
  /// a row whose length differs from nvars().
  void add_term(std::uint64_t coeff, std::span<const std::uint32_t> exponents);
  void reserve(std::size_t terms);

  std::uint64_t coeff(std::size_t i) const noexcept { return coeffs_[i]; }
  void set_coeff(std::size_t i, std::uint64_t c);
  std::span<const std::uint32_t> exponents(std::size_t i) const noexcept {
    return {exps_.data() + i * nvars_, nvars_};
  }
  /// The exponents of x3..xn.
  std::span<const std::uint32_t> evaluated_exponents(std::size_t i) const noexcept {
    return exponents(i).subspan(2);
  }
  Bidegree bidegree(std::size_t i) const noexcept {
    return {exps_[i * nvars_], exps_[i * nvars_ + 1]};
  }
  std::span<const std::uint64_t> coeffs() const noexcept { return coeffs_; }

  /// Largest exponent of variable `var` (0-based) over all terms.
  std::uint32_t degree(std::size_t var) const noexcept;

  /// True when rows are non-increasing lexicographically.
  bool is_sorted() const noexcept;
  /// Sorts into canonical order; returns true when any term moved.
  bool sort();
  /// Index of the first term whose row equals its predecessor's (sorted input).
  std::optional<std::size_t> find_duplicate() const noexcept;

  /// Throws unless sorted, duplicate-free and every coefficient is in [1, p).
  void validate(const PrimeModulus& m) const;

  friend bool operator==(const SparsePolynomial&, const SparsePolynomial&) = default;

 private:
  std::size_t nvars_;
  std::vector<std::uint64_t> coeffs_;
  std::vector<std::uint32_t> exps_;
};

/// The point beta = (beta_3, ..., beta_n); image t evaluates x_k at beta_k^t.
struct EvalPoint {
  std::vector<std::uint64_t> beta;

  friend bool operator==(const EvalPoint&, const EvalPoint&) = default;
};

/// Uniform beta_k in [1, p - 1] drawn from a seeded mt19937_64.
EvalPoint sample_eval_point(std::size_t nvars, const PrimeModulus& m, std::uint64_t seed);

/// Throws Error(invalid_argument) unless beta has n - 2 entries in [1, p).
void validate_eval_point(const EvalPoint& point, std::size_t nvars, const PrimeModulus& m);

}  // namespace modeval
