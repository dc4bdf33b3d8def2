// Copyright 2026 The modeval Authors
// SPDX-License-Identifier: Apache-2.0

#include "modeval/oracle.hpp"

#include <gmpxx.h>

#include <functional>
#include <map>
#include <utility>
#include <vector>

#include "modeval/error.hpp"

namespace modeval::oracle {

namespace {

mpz_class to_mpz(std::uint64_t v) {
  mpz_class z;
  mpz_import(z.get_mpz_t(), 1, 1, sizeof(v), 0, 0, &v);
  return z;
}

std::uint64_t to_u64(const mpz_class& z) {
  std::uint64_t v = 0;
  mpz_export(&v, nullptr, 1, sizeof(v), 0, 0, z.get_mpz_t());
  return v;
}

}  // namespace

std::uint64_t naive_modmul(std::uint64_t x, std::uint64_t y, std::uint64_t p) {
  if (p == 0) throw Error(Errc::invalid_argument, "modulus is zero");
  mpz_class r = to_mpz(x) * to_mpz(y);
  r %= to_mpz(p);
  return to_u64(r);
}

std::uint64_t naive_modadd(std::uint64_t x, std::uint64_t y, std::uint64_t p) {
  if (p == 0) throw Error(Errc::invalid_argument, "modulus is zero");
  mpz_class r = to_mpz(x) + to_mpz(y);
  r %= to_mpz(p);
  return to_u64(r);
}

std::uint64_t naive_powmod(std::uint64_t x, std::uint64_t k, std::uint64_t p) {
  if (p == 0) throw Error(Errc::invalid_argument, "modulus is zero");
  mpz_class r;
  const mpz_class base = to_mpz(x);
  const mpz_class exp = to_mpz(k);
  const mpz_class mod = to_mpz(p);
  mpz_powm(r.get_mpz_t(), base.get_mpz_t(), exp.get_mpz_t(), mod.get_mpz_t());
  return to_u64(r);
}

OracleImage naive_evaluate(const SparsePolynomial& f, const EvalPoint& beta, std::uint64_t t,
                           const PrimeModulus& m) {
  if (t == 0) throw Error(Errc::invalid_argument, "evaluation index must be at least 1");
  const std::size_t nv = f.nvars() - 2;
  if (beta.beta.size() != nv) throw Error(Errc::invalid_argument, "wrong point length");
  const mpz_class p = to_mpz(m.value());

  // y_k = beta_k^t
  std::vector<mpz_class> y(nv);
  const mpz_class tz = to_mpz(t);
  for (std::size_t k = 0; k < nv; ++k) {
    const mpz_class b = to_mpz(beta.beta[k]);
    mpz_powm(y[k].get_mpz_t(), b.get_mpz_t(), tz.get_mpz_t(), p.get_mpz_t());
  }

  using Key = std::pair<std::uint32_t, std::uint32_t>;
  std::map<Key, mpz_class, std::greater<Key>> sums;
  mpz_class term;
  mpz_class power;
  for (std::size_t i = 0; i < f.size(); ++i) {
    const auto ex = f.exponents(i);
    term = to_mpz(f.coeff(i));
    for (std::size_t k = 0; k < nv; ++k) {
      mpz_powm_ui(power.get_mpz_t(), y[k].get_mpz_t(), ex[k + 2], p.get_mpz_t());
      term *= power;
      term %= p;
    }
    mpz_class& acc = sums[{ex[0], ex[1]}];
    acc += term;
    acc %= p;
  }

  OracleImage out;
  out.t = t;
  for (const auto& [key, c] : sums) {
    if (c != 0) out.terms.push_back({key.first, key.second, to_u64(c)});
  }
  return out;
}

ImageSet naive_evaluate_all(const SparsePolynomial& f, const EvalPoint& beta, std::size_t T,
                            const PrimeModulus& m) {
  ImageSet out;
  out.reserve(T);
  for (std::size_t t = 1; t <= T; ++t) out.push_back(naive_evaluate(f, beta, t, m));
  return out;
}

}  // namespace modeval::oracle
