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

#include <doctest.h>

#include <set>

#include <boost/math/distributions/chi_squared.hpp>

#include "pruw/field.hpp"
#include "pruw/rational.hpp"

using namespace pruw;

TEST_SUITE("field") {

TEST_CASE("small-field arithmetic fixtures") {
  Field f(7);
  CHECK(f.add(Fe{3}, Fe{5}) == Fe{1});
  CHECK(f.div(Fe{3}, Fe{3}) == Fe{1});
  CHECK(f.div(Fe{1}, Fe{3}) == Fe{5});
  CHECK(f.sub(Fe{2}, Fe{5}) == Fe{4});
  CHECK(f.neg(Fe{0}) == Fe{0});
  CHECK(f.from_int(-1) == Fe{6});
  CHECK(f.pow(Fe{3}, 6) == Fe{1});
  CHECK(f.arith(Fe{4}, Fe{2}, ArithOp::kDiv) == Fe{2});
  CHECK_THROWS_AS(f.inv(Fe{0}), DomainError);
}

TEST_CASE("inverse by brute force") {
  for (std::uint64_t q : {5ull, 7ull, 11ull, 127ull}) {
    Field f(q);
    for (std::uint64_t a = 1; a < q; ++a) {
      std::uint64_t brute = 0;
      for (std::uint64_t x = 1; x < q; ++x) {
        if (a * x % q == 1) brute = x;
      }
      CHECK(f.inv(Fe{a}).v == brute);
    }
  }
}

TEST_CASE("a times its inverse is one near the top of the range") {
  Field f(2305843009213693951ull);  // 2^61 − 1
  Rng rng(9);
  for (int i = 0; i < 200; ++i) {
    Fe a = rng.nonzero(f);
    CHECK(f.mul(a, f.inv(a)) == Fe{1});
  }
}

TEST_CASE("field rejects composite or oversized moduli") {
  CHECK_THROWS_AS(Field(8), ConfigError);
  CHECK_THROWS_AS(Field(1), ConfigError);
  CHECK_THROWS_AS(Field(1ull << 63), ConfigError);
  CHECK(is_prime(2147483647));
  CHECK_FALSE(is_prime(2147483649ull));
}

TEST_CASE("evaluation points follow the deterministic rule") {
  auto a = allocate_eval_points(4, 1, 11);
  CHECK(a.fs == std::vector<Fe>{Fe{1}});
  CHECK(a.alphas == std::vector<Fe>{Fe{2}, Fe{3}, Fe{4}, Fe{5}});
  auto b = allocate_eval_points(10, 2, 127);
  CHECK(b.fs == std::vector<Fe>{Fe{1}, Fe{2}});
  REQUIRE(b.alphas.size() == 10);
  CHECK(b.alphas.front() == Fe{3});
  CHECK(b.alphas.back() == Fe{12});
  CHECK_THROWS_AS(allocate_eval_points(4, 1, 5), ConfigError);
}

TEST_CASE("custom points are checked") {
  CHECK_NOTHROW(make_field_params(5, {Fe{1}, Fe{2}, Fe{3}, Fe{4}}, {Fe{0}}));
  CHECK_THROWS_AS(make_field_params(5, {Fe{1}, Fe{1}}, {Fe{0}}), ConfigError);
  CHECK_THROWS_AS(make_field_params(5, {Fe{1}, Fe{2}}, {Fe{2}}), ConfigError);
  CHECK_THROWS_AS(make_field_params(5, {Fe{0}, Fe{2}}, {Fe{1}}), ConfigError);
}

TEST_CASE("seeded streams are reproducible") {
  Field f(7);
  Rng a(0), b(0);
  auto x = seeded_uniform(a, f, 3);
  auto y = seeded_uniform(b, f, 3);
  CHECK(x == y);
  for (Fe v : x) CHECK(v.v < 7);
  CHECK(derive_seed(1, {2, 3}) == derive_seed(1, {2, 3}));
  CHECK(derive_seed(1, {2, 3}) != derive_seed(1, {3, 2}));
}

TEST_CASE("uniform draws pass chi-square at 0.01") {
  Field f(7);
  Rng rng(12345);
  const int n = 100000;
  std::vector<double> counts(7, 0);
  for (int i = 0; i < n; ++i) counts[rng.uniform(f).v] += 1;
  double stat = 0;
  for (double c : counts) stat += (c - n / 7.0) * (c - n / 7.0) / (n / 7.0);
  boost::math::chi_squared dist(6);
  CHECK(stat < boost::math::quantile(boost::math::complement(dist, 0.01)));
}

TEST_CASE("rational parsing and rounding") {
  CHECK(parse_rational("0.25") == Rational(1, 4));
  CHECK(parse_rational("5/2") == Rational(5, 2));
  CHECK(parse_rational("-3") == Rational(-3));
  CHECK_THROWS(parse_rational("abc"));
  CHECK(round_nearest(Rational(5, 2)) == 3);
  CHECK(round_nearest(Rational(-5, 2)) == -3);
  CHECK(round_nearest(Rational(12, 5)) == 2);
  CHECK(ceil_of(Rational(4, 3)) == 2);
  CHECK(ceil_of(Rational(2)) == 2);
  CHECK(to_string(Rational(5, 4)) == "5/4");
  CHECK(to_string(Rational(2)) == "2");
}

}  // TEST_SUITE
