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

#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "pruw/field.hpp"
#include "pruw/rational.hpp"
#include "pruw/storage.hpp"

namespace pruw::topr {

struct TopRParams {
  int N = 0, case_id = 0, ell = 0, x = 0;

  static TopRParams make(int N, int case_id);
  // Side of the reversing matrix: P (case 1) or P*ell (case 2).
  int dim(int P) const { return case_id == 1 ? P : P * ell; }
  // Unknown noise coefficients in one answer.
  int answer_noise_terms() const { return case_id == 1 ? x + ell + 2 : x + 3; }
};

// Coordinator output. perm[i] is the true subpacket placed at permuted
// position i+1 (1-based values); reversing[n] is database n's noisy matrix.
struct PermutationSetup {
  int P = 0;
  TopRParams params;
  std::vector<int> perm;
  std::vector<std::vector<Fe>> reversing;
};

std::vector<int> random_permutation(int P, Rng& rng);

// R[a][b] = 1 iff perm[b] = a+1, so R times a permuted vector restores
// the original order. Row-major P×P.
std::vector<int> reversing_pattern(std::span<const int> perm);

// Noise-free R (case 1) or block-scaled R̃_n (case 2) for database n.
std::vector<Fe> denoised_reversing(std::span<const int> perm, const TopRParams& params,
                                   const FieldParams& fp, int n);

PermutationSetup coordinator_setup(int P, const TopRParams& params,
                                   const FieldParams& fp, std::uint64_t seed,
                                   NoiseMode mode = NoiseMode::kFresh,
                                   std::span<const int> fixed_perm = {});

// Hands each database its own R_n.
void install_reversing(std::vector<DatabaseState>& states,
                       const PermutationSetup& setup);

struct ReadQuery {
  int theta = 0;
  int M = 0;
  std::vector<std::vector<Fe>> per_db;  // ell blocks of M entries
};

ReadQuery build_read_query(int theta, int M, const TopRParams& params,
                           const FieldParams& fp, Rng& rng,
                           NoiseMode mode = NoiseMode::kFresh);

// Database side: one answer per entry of the downlink set (1-based
// permuted indices).
std::vector<Fe> answer_sparse(const DatabaseState& state, std::span<const Fe> query,
                              std::span<const int> downlink,
                              const TopRParams& params, const FieldParams& fp);

// User side: ell bits of one subpacket from all N answers.
std::vector<Fe> decode_subpacket(std::span<const Fe> answers, const TopRParams& params,
                                 const FieldParams& fp);

struct SparseRead {
  std::vector<int> true_indices;         // V(i) = perm(Ṽ(i))
  std::vector<std::vector<Fe>> subpackets;
};

SparseRead read_sparse(const ReadQuery& query, std::span<const int> downlink,
                       const PermutationSetup& setup,
                       std::span<const DatabaseState> states, const FieldParams& fp);

// ⌊P·r⌉, halves rounded up.
int sparse_count(int P, const Rational& r);

// Highest `count` scores; ties go to the lower index. 1-based, ascending.
std::vector<int> select_top(std::span<const Rational> scores, int count);

// Permuted positions holding the given true subpackets, ascending.
std::vector<int> permuted_positions(std::span<const int> perm,
                                    std::span<const int> true_indices);

struct SparseWritePayload {
  std::vector<Fe> updates;
  std::vector<int> positions;  // 1-based permuted indices
};

struct SparseWrite {
  std::vector<SparseWritePayload> per_db;
  std::vector<int> positions;
};

// deltas: (true subpacket, ell update values) for each chosen subpacket.
SparseWrite build_sparse_write(
    const std::vector<std::pair<int, std::vector<Fe>>>& deltas,
    std::span<const int> perm, const TopRParams& params, const FieldParams& fp,
    Rng& rng, NoiseMode mode = NoiseMode::kFresh);

// Database side: T_n = R_n V̂, then the scaled incremental update.
void apply_sparse_write(DatabaseState& state, std::span<const Fe> query,
                        const SparseWritePayload& payload, const TopRParams& params,
                        const FieldParams& fp);

// Picks the top ⌊P·r⌉ subpackets by score and writes deltas for them.
// all_deltas holds P*ell values, subpacket-major. Returns the wire
// positions.
std::vector<int> write_sparse(std::span<const Fe> all_deltas,
                              std::span<const Rational> scores, const Rational& r,
                              const PermutationSetup& setup, const ReadQuery& query,
                              std::vector<DatabaseState>& states,
                              const FieldParams& fp, Rng& rng,
                              NoiseMode mode = NoiseMode::kFresh);

// log_q P when it is a whole number.
std::optional<int> exact_log(std::uint64_t q, std::uint64_t P);
// ⌈log_q P⌉, the field symbols charged per position on the wire.
int position_symbols(std::uint64_t q, std::uint64_t P);

struct CostValue {
  std::optional<Rational> exact;  // present when log_q P is integral
  double value = 0;
};

struct TopRCosts {
  CostValue read, write;                // derivation
  CostValue read_stated, write_stated;  // (1−2/N) denominators in both cases
};

TopRCosts costs_topr(int N, int P, std::uint64_t q, const Rational& r,
                     const Rational& r_prime, int case_id);

}  // namespace pruw::topr
