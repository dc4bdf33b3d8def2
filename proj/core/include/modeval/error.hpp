// Copyright 2026 The modeval Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace modeval {

enum class Errc {
  not_prime,
  too_large,
  too_small,
  rounding_mode,
  invalid_argument,
  plan_invalid,
  parse_error,
  duplicate_monomial,
  unsupported,
};

const char* errc_name(Errc code) noexcept;

/// Base of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

/// Malformed input text; `line()` is 1-based, 0 when no line applies.
class ParseError : public Error {
 public:
  ParseError(std::size_t line, const std::string& what);

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

}  // namespace modeval
