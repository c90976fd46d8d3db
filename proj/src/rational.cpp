// Copyright 2026 The PRUW Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//   http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "pruw/rational.hpp"

#include <cctype>
#include <stdexcept>

#include "pruw/field.hpp"

namespace pruw {

namespace {

std::int64_t parse_int(const std::string& s) {
  if (s.empty()) throw ConfigError("empty number");
  std::size_t pos = 0;
  std::int64_t v = 0;
  try {
    v = std::stoll(s, &pos);
  } catch (const std::exception&) {
    throw ConfigError("not a number: '" + s + "'");
  }
  if (pos != s.size()) throw ConfigError("not a number: '" + s + "'");
  return v;
}

}  // namespace

Rational parse_rational(const std::string& text) {
  std::string s;
  for (char c : text) {
    if (!std::isspace(static_cast<unsigned char>(c))) s += c;
  }
  if (auto slash = s.find('/'); slash != std::string::npos) {
    std::int64_t den = parse_int(s.substr(slash + 1));
    if (den == 0) throw ConfigError("zero denominator in '" + text + "'");
    return Rational(parse_int(s.substr(0, slash)), den);
  }
  auto dot = s.find('.');
  if (dot == std::string::npos) return Rational(parse_int(s));
  std::string whole = s.substr(0, dot);
  std::string frac = s.substr(dot + 1);
  if (frac.size() > 15) throw ConfigError("too many decimals in '" + text + "'");
  for (char c : frac) {
    if (!std::isdigit(static_cast<unsigned char>(c))) {
      throw ConfigError("not a number: '" + text + "'");
    }
  }
  bool negative = !whole.empty() && whole[0] == '-';
  if (whole.empty() || whole == "-" || whole == "+") whole += "0";
  std::int64_t scale = 1;
  for (std::size_t i = 0; i < frac.size(); ++i) scale *= 10;
  std::int64_t w = parse_int(whole);
  std::int64_t f = frac.empty() ? 0 : parse_int(frac);
  std::int64_t num = (w < 0 ? -w : w) * scale + f;
  return Rational(negative ? -num : num, scale);
}

std::string to_string(const Rational& x) {
  if (x.denominator() == 1) return std::to_string(x.numerator());
  return std::to_string(x.numerator()) + "/" + std::to_string(x.denominator());
}

double to_double(const Rational& x) {
  return static_cast<double>(x.numerator()) /
         static_cast<double>(x.denominator());
}

std::int64_t round_nearest(const Rational& x) {
  std::int64_t n = x.numerator();
  std::int64_t d = x.denominator();
  if (n >= 0) return (2 * n + d) / (2 * d);
  return -((-2 * n + d) / (2 * d));
}

std::int64_t ceil_of(const Rational& x) {
  std::int64_t n = x.numerator();
  std::int64_t d = x.denominator();
  if (n >= 0) return (n + d - 1) / d;
  return -((-n) / d);
}

}  // namespace pruw
