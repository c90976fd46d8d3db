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

#include <algorithm>
#include <numeric>

#include "pruw/field.hpp"
#include "pruw/poly.hpp"

using namespace pruw;

namespace {

const std::uint64_t kPrimes[] = {11, 127, 2147483647};

// `count` distinct nonzero residues.
std::vector<Fe> distinct_points(const Field& f, int count, Rng& rng) {
  std::vector<Fe> out;
  while (static_cast<int>(out.size()) < count) {
    Fe x = rng.nonzero(f);
    if (std::find(out.begin(), out.end(), x) == out.end()) out.push_back(x);
  }
  return out;
}

}  // namespace

TEST_SUITE("poly") {

TEST_CASE("delta tilde fixture") {
  Field f(11);
  auto dt = delta_tilde(f, std::vector<Fe>{Fe{4}, Fe{5}}, std::vector<Fe>{Fe{1}, Fe{2}});
  CHECK(dt == std::vector<Fe>{Fe{4}, Fe{6}});
  auto zero = delta_tilde(f, std::vector<Fe>{Fe{0}, Fe{0}}, std::vector<Fe>{Fe{1}, Fe{2}});
  CHECK(zero == std::vector<Fe>{Fe{0}, Fe{0}});
  CHECK_THROWS_AS(
      delta_tilde(f, std::vector<Fe>{Fe{1}, Fe{2}}, std::vector<Fe>{Fe{3}, Fe{3}}),
      DomainError);
}

TEST_CASE("combined update fixture") {
  Field f(11);
  const std::vector<Fe> fs{Fe{1}, Fe{2}}, d{Fe{4}, Fe{5}}, z{Fe{2}};
  CHECK(combine_update(f, d, fs, Fe{3}, z) == Fe{10});
  const std::vector<Fe> zeros{Fe{0}, Fe{0}}, z0{Fe{0}};
  CHECK(combine_update(f, zeros, fs, Fe{3}, z0) == Fe{0});
  CHECK_THROWS_AS(combine_update(f, d, fs, Fe{2}, z), DomainError);
  // Single bit: U = d + (f1 − α)·z0.
  const std::vector<Fe> f1{Fe{4}}, d1{Fe{7}}, z1{Fe{9}};
  CHECK(combine_update(f, d1, f1, Fe{6}, z1) == f.add(Fe{7}, f.mul(f.sub(Fe{4}, Fe{6}), Fe{9})));
}

TEST_CASE("noise-free combined update interpolates each delta at its f") {
  Rng rng(77);
  for (std::uint64_t q : kPrimes) {
    Field f(q);
    for (int ell = 1; ell <= 4; ++ell) {
      auto pts = distinct_points(f, 2 * ell, rng);
      std::vector<Fe> fs(pts.begin(), pts.begin() + ell);
      std::vector<Fe> xs(pts.begin() + ell, pts.end());
      std::vector<Fe> d(ell);
      for (auto& v : d) v = rng.uniform(f);
      std::vector<Fe> ys;
      const std::vector<Fe> z{Fe{0}};
      for (Fe x : xs) ys.push_back(combine_update(f, d, fs, x, z));
      auto coeffs = lagrange_coefficients(f, xs, ys);
      for (int k = 0; k < ell; ++k) CHECK(poly_eval(f, coeffs, fs[k]) == d[k]);
    }
  }
}

TEST_CASE("update decomposition fixture and tamper") {
  Field f(11);
  const std::vector<Fe> fs{Fe{1}, Fe{2}}, d{Fe{4}, Fe{5}}, z{Fe{2}};
  const std::vector<Fe> alphas{Fe{3}, Fe{4}, Fe{5}, Fe{6}};
  std::vector<Fe> u;
  for (Fe a : alphas) u.push_back(combine_update(f, d, fs, a, z));
  for (int k = 0; k < 2; ++k) {
    auto v = decomposition_residual(f, u, k, fs, alphas, d, 1);
    CHECK(v.pass);
    CHECK(v.degree_bound == 1);
  }
  u[2] = f.add(u[2], Fe{1});
  CHECK_FALSE(decomposition_residual(f, u, 0, fs, alphas, d, 1).pass);
  CHECK_THROWS_AS(decomposition_residual(f, u, 0, fs, std::vector<Fe>{Fe{3}}, d, 1), DomainError);
}

TEST_CASE("update decomposition holds on 1000 random instances and tampering flips it") {
  Rng rng(2024);
  int passed = 0, flipped = 0;
  for (int trial = 0; trial < 1000; ++trial) {
    const std::uint64_t q = kPrimes[rng.below(3)];
    Field f(q);
    int ell, T3;
    do {
      ell = 1 + static_cast<int>(rng.below(6));
      T3 = 1 + static_cast<int>(rng.below(3));
    } while (2 * ell + T3 + 1 >= static_cast<int>(q));
    const int N = ell + T3 + 1;
    auto pts = distinct_points(f, ell + N, rng);
    std::vector<Fe> fs(pts.begin(), pts.begin() + ell);
    std::vector<Fe> alphas(pts.begin() + ell, pts.end());
    std::vector<Fe> d(ell), z(T3);
    for (auto& v : d) v = rng.uniform(f);
    for (auto& v : z) v = rng.uniform(f);
    std::vector<Fe> u;
    for (Fe a : alphas) u.push_back(combine_update(f, d, fs, a, z));
    const int k = static_cast<int>(rng.below(ell));
    if (decomposition_residual(f, u, k, fs, alphas, d, T3).pass) ++passed;
    const std::size_t victim = rng.below(u.size());
    u[victim] = f.add(u[victim], rng.nonzero(f));
    if (!decomposition_residual(f, u, k, fs, alphas, d, T3).pass) ++flipped;
  }
  CHECK(passed == 1000);
  CHECK(flipped == 1000);
}

TEST_CASE("null shaper fixture") {
  Field f(11);
  const std::vector<Fe> F{Fe{3}};
  const std::vector<Fe> alphas{Fe{4}, Fe{5}, Fe{6}, Fe{7}, Fe{8}};
  auto v = shaper_residual(f, F, Fe{1}, alphas);
  CHECK(v.pass);
  CHECK(v.degree_bound == 0);
  auto empty = shaper_residual(f, std::vector<Fe>{}, Fe{1}, alphas);
  CHECK(empty.pass);
  CHECK(empty.degree_bound == -1);
  CHECK_THROWS_AS(shaper_residual(f, F, Fe{3}, alphas), DomainError);
}

TEST_CASE("null shaper residual holds on 1000 random instances, is tight, and detects tampering") {
  Rng rng(99);
  int passed = 0, tight = 0, flipped = 0, shaped = 0;
  for (int trial = 0; trial < 1000; ++trial) {
    const std::uint64_t q = kPrimes[rng.below(3)];
    Field f(q);
    const int fsize = static_cast<int>(rng.below(5));
    const int N = fsize + 3;
    auto pts = distinct_points(f, N + 1, rng);
    const Fe fk = pts.back();
    std::vector<Fe> alphas(pts.begin(), pts.begin() + N);
    std::vector<Fe> F(alphas.begin(), alphas.begin() + fsize);
    if (shaper_residual(f, F, fk, alphas).pass) ++passed;
    if (fsize == 0 || !shaper_residual(f, F, fk, alphas, fsize - 2).pass) ++tight;

    // Independent evaluation of the residual, then a single-symbol tamper.
    std::vector<Fe> residual;
    Fe den{1};
    for (Fe r : F) den = f.mul(den, f.sub(r, fk));
    bool zero_on_f = true;
    for (int n = 0; n < N; ++n) {
      Fe num{1};
      for (Fe r : F) num = f.mul(num, f.sub(r, alphas[n]));
      const Fe omega = f.div(num, den);
      if (n < fsize && omega.v != 0) zero_on_f = false;
      const Fe scale = f.inv(f.sub(fk, alphas[n]));
      residual.push_back(f.sub(f.mul(omega, scale), scale));
    }
    if (zero_on_f) ++shaped;
    const std::size_t victim = rng.below(residual.size());
    residual[victim] = f.add(residual[victim], rng.nonzero(f));
    if (!fit_degree(f, alphas, residual, fsize - 1).pass) ++flipped;
  }
  CHECK(passed == 1000);
  CHECK(tight == 1000);
  CHECK(flipped == 1000);
  CHECK(shaped == 1000);
}

TEST_CASE("decode system edge cases") {
  Field f(127);
  const std::vector<Fe> fs{Fe{1}};
  const std::vector<Fe> alphas{Fe{2}, Fe{3}, Fe{4}, Fe{5}};
  const std::vector<Fe> zeros(4, Fe{0});
  auto sol = solve_decode(f, decode_system(f, fs, alphas, zeros, 3));
  CHECK(sol == std::vector<Fe>(4, Fe{0}));
  const std::vector<Fe> dup{Fe{2}, Fe{2}, Fe{4}, Fe{5}};
  CHECK_THROWS_AS(solve_decode(f, decode_system(f, fs, dup, zeros, 3)), DomainError);
  CHECK_THROWS_AS(solve_decode(f, decode_system(f, fs, alphas, zeros, 2)), DomainError);
}

TEST_CASE("decode inverts the encoding on planted bits") {
  Rng rng(5);
  for (int trial = 0; trial < 200; ++trial) {
    Field f(kPrimes[rng.below(3)]);
    const int ell = 1 + static_cast<int>(rng.below(3));
    const int noise = 1 + static_cast<int>(rng.below(3));
    const int N = ell + noise;
    if (ell + N >= static_cast<int>(f.q())) continue;
    auto pts = distinct_points(f, ell + N, rng);
    std::vector<Fe> fs(pts.begin(), pts.begin() + ell);
    std::vector<Fe> alphas(pts.begin() + ell, pts.end());
    std::vector<Fe> w(ell), c(noise);
    for (auto& v : w) v = rng.uniform(f);
    for (auto& v : c) v = rng.uniform(f);
    std::vector<Fe> answers;
    for (Fe a : alphas) {
      Fe acc{0};
      for (int k = 0; k < ell; ++k) acc = f.add(acc, f.div(w[k], f.sub(fs[k], a)));
      acc = f.add(acc, poly_eval(f, c, a));
      answers.push_back(acc);
    }
    auto sol = solve_decode(f, decode_system(f, fs, alphas, answers, noise));
    sol.resize(ell);
    CHECK(sol == w);
  }
}

}  // TEST_SUITE
