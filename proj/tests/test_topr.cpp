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

#include "pruw/topr_scheme.hpp"

using namespace pruw;
using namespace pruw::topr;

namespace {

struct Instance {
  FieldParams fp;
  TopRParams params;
  ModelPlain model;
  std::vector<DatabaseState> states;
  PermutationSetup setup;
};

Instance make_instance(int N, int case_id, int P, std::uint64_t q, std::uint64_t seed,
                       std::vector<int> perm = {}) {
  auto params = TopRParams::make(N, case_id);
  auto fp = allocate_eval_points(N, params.ell, q);
  auto model = ModelPlain::random(fp.field, 2, static_cast<std::size_t>(P) * params.ell, seed);
  auto states = init_topr(model, fp, case_id, seed + 1);
  auto setup = coordinator_setup(P, params, fp, seed + 2, NoiseMode::kFresh, perm);
  install_reversing(states, setup);
  return Instance{fp, params, model, std::move(states), std::move(setup)};
}

// Deltas on a chosen subset, through the protocol, plus the oracle.
void write_and_check(Instance& in, int theta, const std::vector<int>& chosen_true,
                     const ReadQuery& query, Rng& rng) {
  const int ell = in.params.ell;
  std::vector<std::pair<int, std::vector<Fe>>> deltas;
  for (int s : chosen_true) {
    std::vector<Fe> d(ell);
    for (auto& v : d) v = rng.uniform(in.fp.field);
    for (int j = 0; j < ell; ++j) {
      Fe& w = in.model.at(theta - 1, (s - 1) * ell + j);
      w = in.fp.field.add(w, d[j]);
    }
    deltas.emplace_back(s, d);
  }
  auto write = build_sparse_write(deltas, in.setup.perm, in.params, in.fp, rng);
  for (auto& st : in.states) {
    apply_sparse_write(st, query.per_db[st.n], write.per_db[st.n], in.params, in.fp);
  }
  CHECK(reconstruct_plain(in.states, in.fp) == in.model);
}

}  // namespace

TEST_SUITE("topr") {

TEST_CASE("reversing pattern fixtures") {
  const std::vector<int> perm{2, 3, 1};
  CHECK(reversing_pattern(perm) == std::vector<int>{0, 0, 1, 1, 0, 0, 0, 1, 0});
  CHECK(reversing_pattern(std::vector<int>{1}) == std::vector<int>{1});
}

TEST_CASE("reversing restores the original order") {
  Rng rng(3);
  for (int trial = 0; trial < 50; ++trial) {
    const int P = 1 + static_cast<int>(rng.below(9));
    auto perm = random_permutation(P, rng);
    auto R = reversing_pattern(perm);
    for (int a = 0; a < P; ++a) {
      int row = 0, col = 0;
      for (int b = 0; b < P; ++b) {
        row += R[a * P + b];
        col += R[b * P + a];
      }
      CHECK(row == 1);
      CHECK(col == 1);
    }
    std::vector<int> x(P), permuted(P);
    for (int i = 0; i < P; ++i) x[i] = 100 + i;
    for (int i = 0; i < P; ++i) permuted[i] = x[perm[i] - 1];
    for (int a = 0; a < P; ++a) {
      int acc = 0;
      for (int b = 0; b < P; ++b) acc += R[a * P + b] * permuted[b];
      CHECK(acc == x[a]);
    }
  }
}

TEST_CASE("case-two denoised matrix has scaled diagonal blocks") {
  auto params = TopRParams::make(10, 2);
  auto fp = allocate_eval_points(10, params.ell, 127);
  const std::vector<int> perm{2, 3, 1};
  const int ell = params.ell, D = 3 * ell;
  for (int n = 0; n < 10; ++n) {
    auto Rn = denoised_reversing(perm, params, fp, n);
    auto R = reversing_pattern(perm);
    for (int a = 0; a < 3; ++a) {
      for (int b = 0; b < 3; ++b) {
        for (int i = 0; i < ell; ++i) {
          for (int j = 0; j < ell; ++j) {
            Fe want{0};
            if (R[a * 3 + b] && i == j) want = fp.field.inv(fp.field.sub(fp.fs[j], fp.alphas[n]));
            CHECK(Rn[(a * ell + i) * D + b * ell + j] == want);
          }
        }
      }
    }
  }
}

TEST_CASE("case-one noise is shared up to the product scale") {
  auto in = make_instance(10, 1, 4, 127, 8);
  const Field& f = in.fp.field;
  auto R = reversing_pattern(in.setup.perm);
  std::vector<Fe> first;
  for (int n = 0; n < 10; ++n) {
    Fe scale{1};
    for (int i = 0; i < in.params.ell; ++i) scale = f.mul(scale, f.sub(in.fp.fs[i], in.fp.alphas[n]));
    std::vector<Fe> z;
    for (std::size_t i = 0; i < R.size(); ++i) {
      z.push_back(f.div(f.sub(in.setup.reversing[n][i], Fe{std::uint64_t(R[i])}), scale));
    }
    if (n == 0) first = z;
    CHECK(z == first);
  }
}

TEST_CASE("coordinator permutation is seeded") {
  auto params = TopRParams::make(10, 1);
  auto fp = allocate_eval_points(10, 2, 127);
  auto a = coordinator_setup(6, params, fp, 5);
  auto b = coordinator_setup(6, params, fp, 5);
  CHECK(a.perm == b.perm);
  CHECK(a.reversing == b.reversing);
  auto id = coordinator_setup(6, params, fp, 5, NoiseMode::kZero);
  CHECK(id.perm == std::vector<int>{1, 2, 3, 4, 5, 6});
  CHECK_THROWS_AS(coordinator_setup(3, params, fp, 5, NoiseMode::kFresh,
                                    std::vector<int>{1, 1, 2}),
                  ConfigError);
}

TEST_CASE("worked example end to end") {
  auto in = make_instance(10, 1, 5, 127, 21, {2, 5, 1, 3, 4});
  Rng rng(4);
  auto query = build_read_query(1, 2, in.params, in.fp, rng);
  const std::vector<int> downlink{2, 3};
  auto read = read_sparse(query, downlink, in.setup, in.states, in.fp);
  CHECK(read.true_indices == std::vector<int>{5, 1});
  for (std::size_t i = 0; i < 2; ++i) {
    const int s = read.true_indices[i];
    for (int j = 0; j < in.params.ell; ++j) {
      CHECK(read.subpackets[i][j] == in.model.at(0, (s - 1) * in.params.ell + j));
    }
  }
  CHECK(permuted_positions(in.setup.perm, std::vector<int>{1, 4}) == std::vector<int>{3, 5});

  std::vector<Fe> deltas(5 * in.params.ell);
  for (auto& d : deltas) d = rng.nonzero(in.fp.field);
  const std::vector<Rational> scores{Rational(9), Rational(0), Rational(0), Rational(7),
                                     Rational(1)};
  auto positions = write_sparse(deltas, scores, Rational(2, 5), in.setup, query, in.states,
                                in.fp, rng);
  CHECK(positions == std::vector<int>{3, 5});
  for (int s : {1, 4}) {
    for (int j = 0; j < in.params.ell; ++j) {
      Fe& w = in.model.at(0, (s - 1) * in.params.ell + j);
      w = in.fp.field.add(w, deltas[(s - 1) * in.params.ell + j]);
    }
  }
  CHECK(reconstruct_plain(in.states, in.fp) == in.model);
}

TEST_CASE("full downlink reads the whole submodel in both cases") {
  for (int c : {1, 2}) {
    auto in = make_instance(10, c, 6, 127, 30 + c);
    Rng rng(c);
    auto query = build_read_query(2, 2, in.params, in.fp, rng);
    std::vector<int> all{1, 2, 3, 4, 5, 6};
    auto read = read_sparse(query, all, in.setup, in.states, in.fp);
    for (std::size_t i = 0; i < all.size(); ++i) {
      const int s = read.true_indices[i];
      for (int j = 0; j < in.params.ell; ++j) {
        CHECK(read.subpackets[i][j] == in.model.at(1, (s - 1) * in.params.ell + j));
      }
    }
  }
}

TEST_CASE("random writes match the oracle, small and large fields") {
  // q = 11 only fits N = 6 (ell = 1); N = 10 runs at q = 127.
  for (auto [N, q] : {std::pair{6, 11ull}, std::pair{10, 127ull}}) {
    for (int c : {1, 2}) {
      auto in = make_instance(N, c, 5, q, 50 + N + c);
      Rng rng(N * 10 + c);
      for (int round = 0; round < 3; ++round) {
        const int theta = 1 + round % 2;
        auto query = build_read_query(theta, 2, in.params, in.fp, rng);
        auto order = random_permutation(5, rng);
        std::vector<int> chosen(order.begin(), order.begin() + 2);
        write_and_check(in, theta, chosen, query, rng);
      }
    }
  }
}

TEST_CASE("duplicate or out-of-range positions are protocol errors") {
  auto in = make_instance(10, 1, 5, 127, 70);
  Rng rng(1);
  auto query = build_read_query(1, 2, in.params, in.fp, rng);
  SparseWritePayload dup{{Fe{1}, Fe{2}}, {3, 3}};
  CHECK_THROWS_AS(apply_sparse_write(in.states[0], query.per_db[0], dup, in.params, in.fp),
                  ProtocolError);
  SparseWritePayload far{{Fe{1}}, {6}};
  CHECK_THROWS_AS(apply_sparse_write(in.states[0], query.per_db[0], far, in.params, in.fp),
                  ProtocolError);
  std::vector<std::pair<int, std::vector<Fe>>> twice{{1, {Fe{1}, Fe{1}}}, {1, {Fe{1}, Fe{1}}}};
  CHECK_THROWS_AS(build_sparse_write(twice, in.setup.perm, in.params, in.fp, rng),
                  ProtocolError);
}

TEST_CASE("empty sparse write leaves the model unchanged") {
  auto in = make_instance(10, 2, 5, 127, 80);
  Rng rng(2);
  auto query = build_read_query(1, 2, in.params, in.fp, rng);
  std::vector<Fe> deltas(5 * in.params.ell, Fe{1});
  std::vector<Rational> scores(5, Rational(1));
  auto positions = write_sparse(deltas, scores, Rational(0), in.setup, query, in.states,
                                in.fp, rng);
  CHECK(positions.empty());
  CHECK(reconstruct_plain(in.states, in.fp) == in.model);
}

TEST_CASE("selection helpers") {
  CHECK(sparse_count(25, Rational(1, 5)) == 5);
  CHECK(sparse_count(5, Rational(1, 2)) == 3);  // 2.5 rounds up
  CHECK(sparse_count(5, Rational(1, 20)) == 0);
  CHECK_THROWS_AS(sparse_count(5, Rational(3, 2)), ConfigError);
  const std::vector<Rational> scores{Rational(1), Rational(3), Rational(3), Rational(2)};
  CHECK(select_top(scores, 2) == std::vector<int>{2, 3});
  CHECK(select_top(scores, 1) == std::vector<int>{2});
  CHECK(exact_log(5, 25) == 2);
  CHECK_FALSE(exact_log(5, 24).has_value());
  CHECK(exact_log(7, 1) == 0);
  CHECK(position_symbols(5, 24) == 2);
  CHECK(position_symbols(5, 26) == 3);
}

TEST_CASE("closed-form costs") {
  auto zero = costs_topr(10, 1, 5, Rational(0), Rational(0), 1);
  CHECK(*zero.read.exact == Rational(0));
  CHECK(*zero.write.exact == Rational(0));
  const Rational r(1, 5);
  auto c1 = costs_topr(10, 25, 5, r, r, 1);
  // 4r(1 + 2)/0.8 and (4r' + 0.4(1 + r')·2)/0.8.
  CHECK(*c1.write.exact == Rational(3));
  CHECK(*c1.read.exact == (Rational(4, 5) + Rational(2, 5) * Rational(6, 5) * 2) / Rational(4, 5));
  CHECK(c1.read_stated.exact == c1.read.exact);
  auto c2 = costs_topr(10, 25, 5, r, r, 2);
  CHECK(*c2.write.exact == Rational(2) * r * 3 / Rational(3, 5));
  CHECK(*c2.write_stated.exact == Rational(2) * r * 3 / Rational(4, 5));
  auto frac = costs_topr(10, 24, 5, r, r, 1);
  CHECK_FALSE(frac.read.exact.has_value());
  CHECK(frac.read.value > 0);
}

}  // TEST_SUITE
