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

#include "pruw/field.hpp"
#include "pruw/kernels.hpp"

using namespace pruw;

TEST_SUITE("kernels") {

TEST_CASE("parallel dot rows matches the serial reference") {
  for (std::uint64_t q : {11ull, 2147483647ull, 2305843009213693951ull}) {
    Field f(q);
    Rng rng(q);
    for (std::size_t width : {1u, 3u, 8u, 33u}) {
      for (std::size_t period : {1u, 2u, 5u}) {
        const std::size_t rows = 1000;
        auto cells = seeded_uniform(rng, f, rows * width);
        auto vecs = seeded_uniform(rng, f, period * width);
        std::vector<Fe> a(rows), b(rows);
        kernels::dot_rows(f, cells, width, vecs, period, a);
        kernels::dot_rows_serial(f, cells, width, vecs, period, b);
        CHECK(a == b);
      }
    }
  }
}

TEST_CASE("parallel axpy rows matches the serial reference") {
  for (std::uint64_t q : {11ull, 2147483647ull}) {
    Field f(q);
    Rng rng(q + 1);
    for (std::size_t width : {1u, 4u, 17u}) {
      for (std::size_t period : {1u, 3u}) {
        const std::size_t rows = 999;
        auto cells = seeded_uniform(rng, f, rows * width);
        auto copy = cells;
        auto coeffs = seeded_uniform(rng, f, rows);
        auto vecs = seeded_uniform(rng, f, period * width);
        kernels::axpy_rows(f, cells, width, coeffs, vecs, period);
        kernels::axpy_rows_serial(f, copy, width, coeffs, vecs, period);
        CHECK(cells == copy);
      }
    }
  }
}

TEST_CASE("dot rows small hand example") {
  Field f(7);
  const std::vector<Fe> cells{Fe{1}, Fe{2}, Fe{3}, Fe{4}};
  const std::vector<Fe> vec{Fe{5}, Fe{6}};
  std::vector<Fe> out(2);
  kernels::dot_rows(f, cells, 2, vec, 1, out);
  CHECK(out[0] == Fe{(5 + 12) % 7});
  CHECK(out[1] == Fe{(15 + 24) % 7});
  CHECK(kernels::max_threads() >= 1);
}

}  // TEST_SUITE
