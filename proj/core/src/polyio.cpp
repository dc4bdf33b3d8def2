// Copyright 2026 The modeval Authors
// SPDX-License-Identifier: Apache-2.0

#include "modeval/polyio.hpp"

#include <charconv>
#include <fstream>
#include <istream>
#include <optional>
#include <ostream>
#include <random>
#include <set>
#include <unordered_set>

#include <nlohmann/json.hpp>

#include "modeval/error.hpp"

namespace modeval {

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::vector<std::string_view> split_ws(std::string_view s) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && (s[i] == ' ' || s[i] == '\t')) ++i;
    std::size_t j = i;
    while (j < s.size() && s[j] != ' ' && s[j] != '\t') ++j;
    if (j > i) out.push_back(s.substr(i, j - i));
    i = j;
  }
  return out;
}

template <class T>
T parse_number(std::string_view tok, std::size_t line, const char* what) {
  T v{};
  const auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
  if (ec != std::errc{} || ptr != tok.data() + tok.size()) {
    throw ParseError(line, std::string("invalid ") + what + " '" + std::string(tok) + "'");
  }
  return v;
}

/// Reads lines, skipping blanks and comments.
class LineReader {
 public:
  explicit LineReader(std::istream& in) : in_(in) {}

  std::optional<std::string_view> next() {
    while (std::getline(in_, buf_)) {
      ++line_;
      const std::string_view t = trim(buf_);
      if (t.empty() || t.front() == '#') continue;
      return t;
    }
    return std::nullopt;
  }
  std::size_t line() const noexcept { return line_; }

 private:
  std::istream& in_;
  std::string buf_;
  std::size_t line_ = 0;
};

std::uint64_t header_field(LineReader& r, std::string_view key) {
  const auto text = r.next();
  if (!text) throw ParseError(r.line(), "missing '" + std::string(key) + "' header line");
  const auto toks = split_ws(*text);
  if (toks.size() != 2 || toks[0] != key) {
    throw ParseError(r.line(), "expected '" + std::string(key) + " <value>'");
  }
  return parse_number<std::uint64_t>(toks[1], r.line(), "header value");
}

}  // namespace

ParsedPoly parse_poly(std::istream& in) {
  LineReader r(in);
  const auto magic = r.next();
  if (!magic || *magic != kPolyMagic) {
    throw ParseError(r.line(), "expected '" + std::string(kPolyMagic) + "' header");
  }
  const std::uint64_t p = header_field(r, "p");
  const std::size_t header_line = r.line();
  const std::uint64_t n = header_field(r, "n");
  if (n < 3 || n > kMaxFileVariables) {
    throw ParseError(r.line(), "variable count must lie in [3, " +
                                   std::to_string(kMaxFileVariables) + "]");
  }
  const std::uint64_t s = header_field(r, "s");

  std::optional<PrimeModulus> modulus;
  try {
    modulus.emplace(p);
  } catch (const Error& e) {
    throw Error(e.code(), "line " + std::to_string(header_line) + ": " + e.what());
  }

  ParsedPoly out{*modulus, SparsePolynomial(n), {}};
  std::vector<std::uint32_t> row(n);
  std::uint64_t reduced = 0;
  std::uint64_t count = 0;
  while (const auto text = r.next()) {
    if (count == s) throw ParseError(r.line(), "more terms than the header's s");
    const auto toks = split_ws(*text);
    if (toks.size() != n + 1) {
      throw ParseError(r.line(), "expected " + std::to_string(n + 1) + " fields, got " +
                                     std::to_string(toks.size()));
    }
    std::uint64_t c = parse_number<std::uint64_t>(toks[0], r.line(), "coefficient");
    if (c >= p) {
      c %= p;
      ++reduced;
    }
    if (c == 0) throw ParseError(r.line(), "coefficient is zero modulo p");
    for (std::size_t k = 0; k < n; ++k) {
      row[k] = parse_number<std::uint32_t>(toks[k + 1], r.line(), "exponent");
      if (row[k] > kMaxFileExponent) {
        throw ParseError(r.line(), "exponent exceeds " + std::to_string(kMaxFileExponent));
      }
    }
    out.poly.add_term(c, row);
    ++count;
  }
  if (count != s) {
    throw ParseError(r.line(), "header declares " + std::to_string(s) + " terms, found " +
                                   std::to_string(count));
  }
  if (reduced != 0) {
    out.warnings.push_back(std::to_string(reduced) + " coefficient(s) reduced modulo p");
  }
  if (out.poly.sort()) out.warnings.push_back("terms were not in canonical order; sorted");
  if (const auto dup = out.poly.find_duplicate()) {
    throw Error(Errc::duplicate_monomial,
                "duplicate monomial at sorted term " + std::to_string(*dup));
  }
  return out;
}

ParsedPoly read_poly_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(Errc::invalid_argument, "cannot open " + path.string());
  return parse_poly(in);
}

void write_poly(std::ostream& out, const SparsePolynomial& f, const PrimeModulus& m) {
  out << kPolyMagic << '\n'
      << "p " << m.value() << '\n'
      << "n " << f.nvars() << '\n'
      << "s " << f.size() << '\n';
  std::string line;
  char buf[24];
  for (std::size_t i = 0; i < f.size(); ++i) {
    line.clear();
    auto put = [&](auto v) {
      const auto res = std::to_chars(buf, buf + sizeof buf, v);
      line.append(buf, res.ptr);
    };
    put(f.coeff(i));
    for (std::uint32_t x : f.exponents(i)) {
      line.push_back(' ');
      put(x);
    }
    line.push_back('\n');
    out << line;
  }
}

void write_poly_file(const std::filesystem::path& path, const SparsePolynomial& f,
                     const PrimeModulus& m) {
  std::ofstream out(path);
  if (!out) throw Error(Errc::invalid_argument, "cannot write " + path.string());
  write_poly(out, f, m);
  if (!out) throw Error(Errc::invalid_argument, "write failed for " + path.string());
}

ImageFormat parse_image_format(std::string_view text) {
  if (text == "csv") return ImageFormat::csv;
  if (text == "jsonl") return ImageFormat::jsonl;
  throw Error(Errc::invalid_argument, "unknown image format '" + std::string(text) + "'");
}

void write_images(const ImageSet& images, std::ostream& out, ImageFormat format) {
  if (format == ImageFormat::csv) {
    out << "t,d,e,c\n";
    for (const auto& img : images) {
      for (const auto& term : img.terms) {
        out << img.t << ',' << term.d << ',' << term.e << ',' << term.c << '\n';
      }
    }
    return;
  }
  for (const auto& img : images) {
    for (const auto& term : img.terms) {
      out << "{\"t\":" << img.t << ",\"d\":" << term.d << ",\"e\":" << term.e
          << ",\"c\":" << term.c << "}\n";
    }
  }
}

namespace {

struct Record {
  std::uint64_t t;
  std::uint32_t d;
  std::uint32_t e;
  std::uint64_t c;
};

Record csv_record(std::string_view text, std::size_t line) {
  std::vector<std::string_view> f;
  std::size_t start = 0;
  for (std::size_t i = 0; i <= text.size(); ++i) {
    if (i == text.size() || text[i] == ',') {
      f.push_back(trim(text.substr(start, i - start)));
      start = i + 1;
    }
  }
  if (f.size() != 4) throw ParseError(line, "expected 4 comma-separated fields");
  return {parse_number<std::uint64_t>(f[0], line, "t"),
          parse_number<std::uint32_t>(f[1], line, "d"),
          parse_number<std::uint32_t>(f[2], line, "e"),
          parse_number<std::uint64_t>(f[3], line, "c")};
}

Record json_record(std::string_view text, std::size_t line) {
  const auto j = nlohmann::json::parse(text, nullptr, false);
  if (j.is_discarded() || !j.is_object()) throw ParseError(line, "invalid JSON object");
  auto field = [&](const char* key) -> std::uint64_t {
    const auto it = j.find(key);
    if (it == j.end() || !it->is_number_unsigned()) {
      throw ParseError(line, std::string("missing or non-integer field '") + key + "'");
    }
    return it->get<std::uint64_t>();
  };
  const std::uint64_t d = field("d");
  const std::uint64_t e = field("e");
  if (d > UINT32_MAX || e > UINT32_MAX) throw ParseError(line, "degree out of range");
  return {field("t"), static_cast<std::uint32_t>(d), static_cast<std::uint32_t>(e), field("c")};
}

}  // namespace

ImageSet read_images(std::istream& in, ImageFormat format, std::size_t count) {
  ImageSet images = make_image_set(count);
  std::string buf;
  std::size_t line = 0;
  bool header = format == ImageFormat::csv;
  std::uint64_t last_t = 0;
  while (std::getline(in, buf)) {
    ++line;
    const std::string_view text = trim(buf);
    if (text.empty()) continue;
    if (header) {
      if (text != "t,d,e,c") throw ParseError(line, "expected header 't,d,e,c'");
      header = false;
      continue;
    }
    const Record r =
        format == ImageFormat::csv ? csv_record(text, line) : json_record(text, line);
    if (r.t == 0 || r.t > count) {
      throw ParseError(line, "t=" + std::to_string(r.t) + " outside [1, " +
                                 std::to_string(count) + "]");
    }
    if (r.t < last_t) throw ParseError(line, "records are not ordered by t");
    last_t = r.t;
    images[r.t - 1].terms.push_back({r.d, r.e, r.c});
  }
  if (header) throw ParseError(line, "missing header 't,d,e,c'");
  return images;
}

SparsePolynomial generate(const GenSpec& spec) {
  if (spec.n < 3) throw Error(Errc::invalid_argument, "need at least 3 variables");
  if (spec.s == 0) throw Error(Errc::invalid_argument, "need at least one term");
  const PrimeModulus m(spec.p);

  // Pack exponent rows as base-(d+1) integers when they fit in 64 bits.
  const unsigned __int128 base = static_cast<unsigned __int128>(spec.d) + 1;
  unsigned __int128 space = 1;
  bool packed = true;
  for (std::size_t k = 0; k < spec.n && packed; ++k) {
    space *= base;
    if (space > UINT64_MAX) packed = false;
  }
  if (packed && spec.s > space) {
    throw Error(Errc::invalid_argument, "s exceeds the number of distinct monomials");
  }

  std::mt19937_64 rng(spec.seed);
  std::uniform_int_distribution<std::uint32_t> expo(0, spec.d);
  std::uniform_int_distribution<std::uint64_t> coef(1, spec.p - 1);

  SparsePolynomial f(spec.n);
  f.reserve(spec.s);
  std::unordered_set<std::uint64_t> seen_packed;
  std::set<std::vector<std::uint32_t>> seen_rows;
  if (packed) seen_packed.reserve(spec.s);
  std::vector<std::uint32_t> row(spec.n);
  while (f.size() < spec.s) {
    for (auto& x : row) x = expo(rng);
    bool fresh;
    if (packed) {
      std::uint64_t key = 0;
      for (std::uint32_t x : row) key = key * static_cast<std::uint64_t>(base) + x;
      fresh = seen_packed.insert(key).second;
    } else {
      fresh = seen_rows.insert(row).second;
    }
    if (fresh) f.add_term(coef(rng), row);
  }
  f.sort();
  return f;
}

}  // namespace modeval
