// Copyright 2026 The modeval Authors
// SPDX-License-Identifier: Apache-2.0

#include "modeval/polynomial.hpp"

#include <algorithm>
#include <numeric>
#include <random>
#include <string>

#include "modeval/error.hpp"

namespace modeval {

SparsePolynomial::SparsePolynomial(std::size_t nvars) : nvars_(nvars) {
  if (nvars < 3) {
    throw Error(Errc::invalid_argument, "a polynomial needs at least 3 variables");
  }
}

void SparsePolynomial::add_term(std::uint64_t coeff, std::span<const std::uint32_t> exponents) {
  if (coeff == 0) throw Error(Errc::invalid_argument, "zero coefficient");
  if (exponents.size() != nvars_) {
    throw Error(Errc::invalid_argument,
                "term has " + std::to_string(exponents.size()) + " exponents, expected " +
                    std::to_string(nvars_));
  }
  coeffs_.push_back(coeff);
  exps_.insert(exps_.end(), exponents.begin(), exponents.end());
}

void SparsePolynomial::reserve(std::size_t terms) {
  coeffs_.reserve(terms);
  exps_.reserve(terms * nvars_);
}

void SparsePolynomial::set_coeff(std::size_t i, std::uint64_t c) {
  if (c == 0) throw Error(Errc::invalid_argument, "zero coefficient");
  coeffs_[i] = c;
}

std::uint32_t SparsePolynomial::degree(std::size_t var) const noexcept {
  std::uint32_t deg = 0;
  for (std::size_t i = 0; i < size(); ++i) deg = std::max(deg, exps_[i * nvars_ + var]);
  return deg;
}

namespace {

// Strict "row a comes before row b" in canonical (descending) order.
bool precedes(std::span<const std::uint32_t> a, std::span<const std::uint32_t> b) {
  return std::lexicographical_compare(b.begin(), b.end(), a.begin(), a.end());
}

}  // namespace

bool SparsePolynomial::is_sorted() const noexcept {
  for (std::size_t i = 1; i < size(); ++i) {
    if (precedes(exponents(i), exponents(i - 1))) return false;
  }
  return true;
}

bool SparsePolynomial::sort() {
  if (is_sorted()) return false;
  std::vector<std::size_t> order(size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [this](std::size_t a, std::size_t b) {
    return precedes(exponents(a), exponents(b));
  });
  std::vector<std::uint64_t> coeffs(size());
  std::vector<std::uint32_t> exps(exps_.size());
  for (std::size_t k = 0; k < order.size(); ++k) {
    coeffs[k] = coeffs_[order[k]];
    const auto row = exponents(order[k]);
    std::copy(row.begin(), row.end(), exps.begin() + static_cast<std::ptrdiff_t>(k * nvars_));
  }
  coeffs_ = std::move(coeffs);
  exps_ = std::move(exps);
  return true;
}

std::optional<std::size_t> SparsePolynomial::find_duplicate() const noexcept {
  for (std::size_t i = 1; i < size(); ++i) {
    const auto a = exponents(i - 1);
    const auto b = exponents(i);
    if (std::equal(a.begin(), a.end(), b.begin())) return i;
  }
  return std::nullopt;
}

void SparsePolynomial::validate(const PrimeModulus& m) const {
  if (!is_sorted()) throw Error(Errc::invalid_argument, "terms are not in canonical order");
  if (auto dup = find_duplicate()) {
    throw Error(Errc::duplicate_monomial,
                "terms " + std::to_string(*dup - 1) + " and " + std::to_string(*dup) +
                    " share the same monomial");
  }
  for (std::size_t i = 0; i < size(); ++i) {
    if (coeffs_[i] == 0 || coeffs_[i] >= m.value()) {
      throw Error(Errc::invalid_argument,
                  "coefficient of term " + std::to_string(i) + " is not in [1, p)");
    }
  }
}

EvalPoint sample_eval_point(std::size_t nvars, const PrimeModulus& m, std::uint64_t seed) {
  if (nvars < 3) throw Error(Errc::invalid_argument, "need at least 3 variables");
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::uint64_t> dist(1, m.value() - 1);
  EvalPoint point;
  point.beta.resize(nvars - 2);
  for (auto& b : point.beta) b = dist(rng);
  return point;
}

void validate_eval_point(const EvalPoint& point, std::size_t nvars, const PrimeModulus& m) {
  if (point.beta.size() + 2 != nvars) {
    throw Error(Errc::invalid_argument, "evaluation point has " +
                                            std::to_string(point.beta.size()) +
                                            " entries, expected " + std::to_string(nvars - 2));
  }
  for (std::uint64_t b : point.beta) {
    if (b == 0 || b >= m.value()) {
      throw Error(Errc::invalid_argument, "evaluation point entries must lie in [1, p)");
    }
  }
}

}  // namespace modeval
