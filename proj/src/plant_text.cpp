// Copyright 2026 The pidtune Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "pidtune/plant_text.hpp"

#include "pidtune/error.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <vector>

namespace pidtune {

namespace {

struct Token {
  std::string_view text;
  std::size_t column;  // 1-based
};

std::vector<Token> tokenize(std::string_view text) {
  std::vector<Token> tokens;
  std::size_t i = 0;
  while (i < text.size()) {
    if (std::isspace(static_cast<unsigned char>(text[i]))) {
      ++i;
      continue;
    }
    const std::size_t start = i;
    while (i < text.size() && !std::isspace(static_cast<unsigned char>(text[i]))) ++i;
    tokens.push_back({text.substr(start, i - start), start + 1});
  }
  return tokens;
}

[[noreturn]] void fail(const std::string& what, std::size_t column, std::string_view found) {
  throw Error(ErrorCode::Parse, "plant parse error at column " + std::to_string(column) + ": expected " + what +
                                    ", found '" + std::string(found) + "'");
}

[[noreturn]] void fail_end(const std::string& what, std::size_t column) {
  throw Error(ErrorCode::Parse,
              "plant parse error at column " + std::to_string(column) + ": expected " + what + ", found end of input");
}

bool parse_coefficient(std::string_view s, double& out) {
  const char* first = s.data();
  const char* last = s.data() + s.size();
  if (first != last && *first == '+') ++first;
  const auto [ptr, ec] = std::from_chars(first, last, out);
  return ec == std::errc{} && ptr == last && std::isfinite(out);
}

std::string to_chars_string(double v, std::chars_format fmt, int precision) {
  char buf[64];
  const auto res = precision < 0 ? std::to_chars(buf, buf + sizeof buf, v)
                                 : std::to_chars(buf, buf + sizeof buf, v, fmt, precision);
  return std::string(buf, res.ptr);
}

}  // namespace

std::string format_shortest(double v) { return to_chars_string(v, std::chars_format::general, -1); }

std::string format_17g(double v) { return to_chars_string(v, std::chars_format::general, 17); }

TransferFunction parse_plant(std::string_view text) {
  const auto tokens = tokenize(text);
  if (tokens.size() == 1 && tokens[0].text == kBenchmark3Preset) {
    return TransferFunction({1.0}, {1.0, 3.0, 3.0, 1.0});
  }
  std::size_t pos = 0;
  const std::size_t end_column = text.size() + 1;
  auto expect_keyword = [&](std::string_view keyword) {
    if (pos >= tokens.size()) fail_end("'" + std::string(keyword) + "'", end_column);
    if (tokens[pos].text != keyword) fail("'" + std::string(keyword) + "'", tokens[pos].column, tokens[pos].text);
    ++pos;
  };
  auto coefficients = [&](std::string_view terminator) {
    Poly out;
    while (pos < tokens.size() && tokens[pos].text != terminator) {
      double v = 0.0;
      if (!parse_coefficient(tokens[pos].text, v)) fail("a finite decimal coefficient", tokens[pos].column, tokens[pos].text);
      out.push_back(v);
      ++pos;
    }
    if (out.empty()) {
      if (pos < tokens.size()) fail("at least one coefficient", tokens[pos].column, tokens[pos].text);
      fail_end("at least one coefficient", end_column);
    }
    return out;
  };

  if (tokens.empty()) fail_end("'num:' or a preset name", 1);
  if (tokens[0].text != "num:") fail("'num:' or a preset name ('benchmark3')", tokens[0].column, tokens[0].text);
  expect_keyword("num:");
  Poly num = coefficients("/");
  expect_keyword("/");
  expect_keyword("den:");
  Poly den = coefficients("");

  if (den.front() == 0.0) {
    throw Error(ErrorCode::Parse, "plant parse error: leading denominator coefficient must be nonzero");
  }
  TransferFunction tf(std::move(num), std::move(den));
  if (!tf.is_proper()) {
    throw Error(ErrorCode::ImproperSystem, "plant is improper: numerator degree " + std::to_string(tf.num_degree()) +
                                               " exceeds denominator degree " + std::to_string(tf.den_degree()));
  }
  return tf;
}

std::string format_plant(const TransferFunction& tf) {
  std::string out = "num:";
  for (double v : tf.num()) out += " " + format_shortest(v);
  out += " / den:";
  for (double v : tf.den()) out += " " + format_shortest(v);
  return out;
}

}  // namespace pidtune
