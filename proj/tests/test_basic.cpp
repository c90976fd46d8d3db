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

#include <cmath>

#include "pruw/basic_scheme.hpp"

using namespace pruw;
using namespace pruw::basic;

namespace {

// Reads every subpacket of θ by the protocol.
std::vector<Fe> read_all(const std::vector<DatabaseState>& states, const ReadQuery& query,
                         const BasicParams& params, const FieldParams& fp) {
  std::vector<std::vector<Fe>> answers;
  for (const auto& s : states) answers.push_back(answer_read(s, query.per_db[s.n], fp));
  std::vector<Fe> out;
  for (std::size_t sub = 0; sub < answers[0].size(); ++sub) {
    std::vector<Fe> a;
    for (const auto& per_db : answers) a.push_back(per_db[sub]);
    auto bits = decode_read(a, params, fp);
    out.insert(out.end(), bits.begin(), bits.end());
  }
  return out;
}

}  // namespace

TEST_SUITE("basic") {

TEST_CASE("optimal parameters") {
  auto p4 = optimal_params(4);
  CHECK(p4.T1 == 2);
  CHECK(p4.ell == 1);
  CHECK(p4.f_set.empty());
  auto p10 = optimal_params(10);
  CHECK(p10.T1 == 5);
  CHECK(p10.ell == 4);
  CHECK(p10.f_set.empty());
  auto p5 = optimal_params(5);
  CHECK(p5.T1 == 3);
  CHECK(p5.ell == 1);
  CHECK(p5.f_set == std::vector<int>{0});
  CHECK_THROWS_AS(optimal_params(3), ConfigError);
}

TEST_CASE("zero-noise query and answer") {
  auto fp = allocate_eval_points(4, 1, 11);
  auto params = optimal_params(4);
  Rng rng(1);
  auto q = build_read_query(1, 1, params, fp, rng, NoiseMode::kZero);
  ModelPlain model = ModelPlain::zeros(1, 1);
  model.at(0, 0) = Fe{6};
  auto states = init_basic(model, fp, 2, 1, 1, 1, NoiseMode::kZero);
  for (int n = 0; n < 4; ++n) {
    const Fe gap_inv = fp.field.inv(fp.field.sub(fp.fs[0], fp.alphas[n]));
    CHECK(q.per_db[n] == std::vector<Fe>{gap_inv});
    auto a = answer_read(states[n], q.per_db[n], fp);
    CHECK(a == std::vector<Fe>{fp.field.mul(Fe{6}, gap_inv)});
  }
  CHECK_THROWS_AS(build_read_query(0, 1, params, fp, rng), DomainError);
  CHECK_THROWS_AS(answer_read(states[0], std::vector<Fe>{Fe{1}, Fe{2}}, fp), DomainError);
}

TEST_CASE("plant and recover, then write and reconstruct") {
  for (std::uint64_t q : {11ull, 127ull}) {
    for (int N : {4, 5, 6, 7}) {
      Rng rng(q * 31 + N);
      auto params = optimal_params(N);
      auto fp = allocate_eval_points(N, params.ell, q);
      const std::size_t L = 3 * params.ell + 1;
      ModelPlain model = ModelPlain::random(fp.field, 2, L, q + N);
      auto states = init_basic(model, fp, params.T1, params.T2, params.T3, 5);
      const int theta = 1 + static_cast<int>(rng.below(2));
      auto query = build_read_query(theta, 2, params, fp, rng);
      auto got = read_all(states, query, params, fp);
      got.resize(L);
      for (std::size_t p = 0; p < L; ++p) CHECK(got[p] == model.at(theta - 1, p));

      std::vector<Fe> deltas(states.front().L_padded, Fe{0});
      for (std::size_t p = 0; p < L; ++p) deltas[p] = rng.uniform(fp.field);
      write_round(deltas, params, fp, query, states, rng);
      for (std::size_t p = 0; p < L; ++p) {
        model.at(theta - 1, p) = fp.field.add(model.at(theta - 1, p), deltas[p]);
      }
      CHECK(reconstruct_plain(states, fp) == model);
    }
  }
}

TEST_CASE("zero deltas with zero write noise leave storage unchanged") {
  auto params = optimal_params(4);
  auto fp = allocate_eval_points(4, params.ell, 11);
  ModelPlain model = ModelPlain::random(fp.field, 2, 4, 1);
  auto states = init_basic(model, fp, 2, 1, 1, 3);
  auto before = states;
  Rng rng(3);
  auto query = build_read_query(2, 2, params, fp, rng);
  write_round(std::vector<Fe>(4, Fe{0}), params, fp, query, states, rng, NoiseMode::kZero);
  for (int n = 0; n < 4; ++n) CHECK(states[n].cells == before[n].cells);
}

TEST_CASE("null shaper vanishes on the F set") {
  for (int N : {5, 7, 9, 11}) {
    auto params = optimal_params(N);
    auto fp = allocate_eval_points(N, params.ell, 127);
    for (int n : params.f_set) {
      for (int k = 0; k < params.ell; ++k) CHECK(null_shaper(params, fp, n, k) == Fe{0});
    }
    Rng rng(N);
    auto upd = build_write_update(std::vector<Fe>(params.ell * 2, Fe{1}), params, fp, rng);
    for (int n = 0; n < N; ++n) CHECK(upd.per_db[n].has_value() != params.in_f_set(n));
  }
}

TEST_CASE("closed-form costs") {
  CHECK(costs_basic(10).read == Rational(5, 2));
  CHECK(costs_basic(10).write == Rational(5, 2));
  CHECK(costs_basic(4).read == Rational(4));
  CHECK(costs_basic(5).read == Rational(5));
  CHECK(costs_basic(5).write == Rational(4));
  const double limit = to_double(costs_basic(1000000).read);
  CHECK(std::abs(limit - 2) < 1e-5);
  for (int N = 4; N <= 30; ++N) {
    auto c = costs_for(optimal_params(N));
    CHECK(c.read == costs_basic(N).read);
    CHECK(c.write == costs_basic(N).write);
  }
}

}  // TEST_SUITE
