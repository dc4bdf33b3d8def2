// Copyright 2026 The modeval Authors
// SPDX-License-Identifier: Apache-2.0

#include "modeval/precompute.hpp"

#include "modeval/error.hpp"

namespace modeval {

PowerTables build_power_tables(const SparsePolynomial& f, const EvalPoint& point,
                               const PrimeModulus& m, OpCounts* counts) {
  validate_eval_point(point, f.nvars(), m);
  std::vector<std::vector<std::uint64_t>> tables(f.nevaluated());
  std::uint64_t muls = 0;
  for (std::size_t k = 0; k < tables.size(); ++k) {
    const std::uint32_t deg = f.degree(k + 2);
    const std::uint64_t beta = point.beta[k];
    auto& table = tables[k];
    table.resize(std::size_t{deg} + 1);
    table[0] = 1;
    if (deg >= 1) table[1] = beta;
    for (std::size_t j = 2; j <= deg; ++j) {
      table[j] = mulmod_int(table[j - 1], beta, m);
      ++muls;
    }
  }
  if (counts) counts->mul += muls;
  return PowerTables(std::move(tables));
}

GroupIndex build_group_index(const SparsePolynomial& f) {
  GroupIndex index;
  for (std::size_t i = 0; i < f.size(); ++i) {
    const Bidegree key = f.bidegree(i);
    if (index.keys.empty() || index.keys.back() != key) {
      if (!index.keys.empty()) index.offsets.push_back(i);
      index.keys.push_back(key);
    }
  }
  if (!index.keys.empty()) index.offsets.push_back(f.size());
  return index;
}

void MonomialEvals::reset() {
  a.to_integer();
  a.assign(coefficients);
}

MonomialEvals evaluate_monomials(const SparsePolynomial& f, const PowerTables& tables,
                                 const PrimeModulus& m, OpCounts* counts) {
  f.validate(m);
  if (tables.size() != f.nevaluated()) {
    throw Error(Errc::invalid_argument, "power tables do not match the polynomial");
  }
  const std::size_t s = f.size();
  MonomialEvals me;
  me.coefficients.assign(f.coeffs().begin(), f.coeffs().end());
  me.m = FieldArray(s);
  me.a = FieldArray(std::span<const std::uint64_t>(me.coefficients));
  me.groups = build_group_index(f);

  std::uint64_t muls = 0;
  for (std::size_t i = 0; i < s; ++i) {
    const auto exps = f.evaluated_exponents(i);
    std::uint64_t value = tables.table(0)[exps[0]];
    for (std::size_t k = 1; k < exps.size(); ++k) {
      value = mulmod_int(value, tables.table(k)[exps[k]], m);
      ++muls;
    }
    me.m.set(i, value);
  }
  if (counts) counts->mul += muls;
  return me;
}

MonomialEvals prepare(const SparsePolynomial& f, const EvalPoint& point, const PrimeModulus& m,
                      OpCounts* counts) {
  return evaluate_monomials(f, build_power_tables(f, point, m, counts), m, counts);
}

}  // namespace modeval
