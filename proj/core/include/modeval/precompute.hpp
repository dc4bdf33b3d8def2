// Copyright 2026 The modeval Authors
// SPDX-License-Identifier: Apache-2.0

// Setup shared by every evaluation kernel: power tables of beta, the
// monomial evaluations m_i = M_i(beta), and the run-length index of terms
// sharing a bidegree.

#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "modeval/field_array.hpp"
#include "modeval/polynomial.hpp"
#include "modeval/prime_field.hpp"

namespace modeval {

/// Modular operation tally filled in by the instrumented code paths.
struct OpCounts {
  std::uint64_t mul = 0;
  std::uint64_t add = 0;
};

/// table(k)[j] == beta_{k+3}^j for j in [0, deg(f, x_{k+3})].
class PowerTables {
 public:
  PowerTables() = default;
  explicit PowerTables(std::vector<std::vector<std::uint64_t>> tables)
      : tables_(std::move(tables)) {}

  std::size_t size() const noexcept { return tables_.size(); }
  std::span<const std::uint64_t> table(std::size_t k) const noexcept { return tables_[k]; }

 private:
  std::vector<std::vector<std::uint64_t>> tables_;
};

/// Uses at most (n - 2)(d - 1) modular multiplications.
PowerTables build_power_tables(const SparsePolynomial& f, const EvalPoint& point,
                               const PrimeModulus& m, OpCounts* counts = nullptr);

/// Terms [offsets[g], offsets[g + 1]) share bidegree keys[g].
struct GroupIndex {
  std::vector<std::size_t> offsets{0};
  std::vector<Bidegree> keys;

  std::size_t size() const noexcept { return keys.size(); }
};

GroupIndex build_group_index(const SparsePolynomial& f);

/// Evaluation state: m_i = M_i(beta), the working coefficient vector a, and
/// the group index. `a` advances by one Hadamard step per evaluation for
/// kernels that work in place; `reset()` rewinds it.
struct MonomialEvals {
  FieldArray m;
  FieldArray a;
  std::vector<std::uint64_t> coefficients;
  GroupIndex groups;

  std::size_t size() const noexcept { return coefficients.size(); }
  /// a <- coefficients, integer carrier.
  void reset();
};

/// Uses (n - 3) s modular multiplications. Validates f against m.
MonomialEvals evaluate_monomials(const SparsePolynomial& f, const PowerTables& tables,
                                 const PrimeModulus& m, OpCounts* counts = nullptr);

/// build_power_tables followed by evaluate_monomials.
MonomialEvals prepare(const SparsePolynomial& f, const EvalPoint& point,
                      const PrimeModulus& m, OpCounts* counts = nullptr);

}  // namespace modeval
