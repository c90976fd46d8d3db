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

#pragma once

#include <optional>
#include <span>
#include <vector>

#include "pruw/field.hpp"
#include "pruw/rational.hpp"
#include "pruw/storage.hpp"

namespace pruw::basic {

struct BasicParams {
  int N = 0, T1 = 0, T2 = 0, T3 = 0, ell = 0;
  std::vector<int> f_set;  // 0-based databases that receive no update

  static BasicParams make(int N, int T1, int T2, int T3);
  bool in_f_set(int n) const;
};

BasicParams optimal_params(int N);

// Per-database query: ell blocks of M entries, block-major.
struct ReadQuery {
  int theta = 0;  // 1-based
  int M = 0;
  std::vector<std::vector<Fe>> per_db;
};

ReadQuery build_read_query(int theta, int M, const BasicParams& params,
                           const FieldParams& fp, Rng& rng,
                           NoiseMode mode = NoiseMode::kFresh);

// Database side: one answer per subpacket.
std::vector<Fe> answer_read(const DatabaseState& state, std::span<const Fe> query,
                            const FieldParams& fp);

// User side: answers[n] from all N databases for one subpacket.
std::vector<Fe> decode_read(std::span<const Fe> answers, const BasicParams& params,
                            const FieldParams& fp);

// Per database: one combined symbol per subpacket, or nothing for n in F.
struct WriteUpdate {
  std::vector<std::optional<std::vector<Fe>>> per_db;
};

// deltas has P*ell entries, subpacket-major.
WriteUpdate build_write_update(std::span<const Fe> deltas, const BasicParams& params,
                               const FieldParams& fp, Rng& rng,
                               NoiseMode mode = NoiseMode::kFresh);

// Ω_{n,k} = ∏_{r∈F}(α_r−α_n) / ∏_{r∈F}(α_r−f_k); n and k 0-based.
Fe null_shaper(const BasicParams& params, const FieldParams& fp, int n, int k);

// Database side: S_n += D_n Ω_n U_n Q_n for every subpacket.
void apply_write(DatabaseState& state, std::span<const Fe> query,
                 std::span<const Fe> updates, const BasicParams& params,
                 const FieldParams& fp);

// User and databases in one call, reusing the session's read query.
void write_round(std::span<const Fe> deltas, const BasicParams& params,
                 const FieldParams& fp, const ReadQuery& query,
                 std::vector<DatabaseState>& states, Rng& rng,
                 NoiseMode mode = NoiseMode::kFresh);

struct Costs {
  Rational read;
  Rational write;
  Rational total() const { return read + write; }
};

Costs costs_basic(int N);
// N/ell and (N−|F|)/ell for arbitrary valid parameters.
Costs costs_for(const BasicParams& params);

}  // namespace pruw::basic
