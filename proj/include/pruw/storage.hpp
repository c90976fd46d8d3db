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
#include <iosfwd>
#include <memory>
#include <span>
#include <variant>
#include <vector>

#include "pruw/field.hpp"

namespace pruw {

// Plain model: M submodels of L symbols each, submodel-major.
struct ModelPlain {
  int M = 0;
  std::size_t L = 0;
  std::vector<Fe> values;

  static ModelPlain zeros(int M, std::size_t L);
  static ModelPlain random(const Field& field, int M, std::size_t L,
                           std::uint64_t seed);

  Fe at(int m, std::size_t p) const { return values[m * L + p]; }
  Fe& at(int m, std::size_t p) { return values[m * L + p]; }
  friend bool operator==(const ModelPlain&, const ModelPlain&) = default;
};

// g(x) = x mod y, or y when y divides x. 1-based in and out.
std::size_t g_index(std::size_t x, std::size_t y);

// A stretch of positions with one (read, write) subpacketization pair.
// Offsets and lengths are in positions; length is a multiple of
// lcm(ell_r, ell_w).
struct Region {
  std::size_t offset = 0;
  std::size_t length = 0;
  int ell_r = 0;
  int ell_w = 0;
  int y = 0;
  int case_id = 0;
  int noise_terms = 0;
  friend bool operator==(const Region&, const Region&) = default;
};

struct BasicVariant {
  int T1 = 0, T2 = 0, T3 = 0, ell = 0;
  friend bool operator==(const BasicVariant&, const BasicVariant&) = default;
};
struct TopRVariant {
  int case_id = 0, ell = 0, x = 0;
  friend bool operator==(const TopRVariant&, const TopRVariant&) = default;
};
struct RandomVariant {
  std::vector<Region> regions;
  friend bool operator==(const RandomVariant&, const RandomVariant&) = default;
};
using Variant = std::variant<BasicVariant, TopRVariant, RandomVariant>;

std::uint64_t variant_tag(const Variant& v);

// Basic and top-r cells hold W + (f−α)·noise(α); random-sparse cells hold
// W/(f−α) + noise(α).
enum class CellForm : std::uint8_t { kScaled, kInverse };

struct StorageLayout {
  CellForm form = CellForm::kScaled;
  std::vector<std::uint32_t> f_index;      // per position, 0-based into fs
  std::vector<std::uint32_t> noise_terms;  // per position
  std::size_t positions() const { return f_index.size(); }
};

StorageLayout make_layout(const Variant& variant, std::size_t L_padded);
std::size_t padded_length(const Variant& variant, std::size_t L);
std::size_t required_fs(const Variant& variant);

struct CoordinatorSetup {
  std::uint64_t master_seed = 0;
  std::uint64_t storage_seed = 0;
  std::uint64_t permutation_seed = 0;
  std::uint64_t reversing_seed = 0;

  static CoordinatorSetup from_master(std::uint64_t master_seed);
  friend bool operator==(const CoordinatorSetup&, const CoordinatorSetup&) = default;
};

struct DatabaseState {
  int n = 0;  // 0-based database index
  Variant variant;
  int M = 0;
  std::size_t L = 0;         // unpadded
  std::size_t L_padded = 0;  // multiple of the storage subpacketization
  std::shared_ptr<const StorageLayout> layout;
  std::vector<Fe> cells;      // position-major: cells[p*M + m]
  std::vector<Fe> reversing;  // noisy permutation-reversing matrix, top-r only

  Fe cell(std::size_t p, int m) const { return cells[p * M + m]; }
  Fe& cell(std::size_t p, int m) { return cells[p * M + m]; }
};

TopRVariant topr_variant(int N, int case_id);
BasicVariant basic_variant(int N, int T1, int T2, int T3);

// Generic builder: every database gets the same noise, keyed by
// (seed, variant, m, p).
std::vector<DatabaseState> init_storage(const ModelPlain& model,
                                        const FieldParams& params,
                                        const Variant& variant,
                                        std::uint64_t seed,
                                        NoiseMode mode = NoiseMode::kFresh);

std::vector<DatabaseState> init_basic(const ModelPlain& model,
                                      const FieldParams& params, int T1, int T2,
                                      int T3, std::uint64_t seed,
                                      NoiseMode mode = NoiseMode::kFresh);
std::vector<DatabaseState> init_topr(const ModelPlain& model,
                                     const FieldParams& params, int case_id,
                                     std::uint64_t seed,
                                     NoiseMode mode = NoiseMode::kFresh);
// Single-region random-sparse storage.
std::vector<DatabaseState> init_random_sparse(const ModelPlain& model,
                                              const FieldParams& params,
                                              int case_id, int ell_r, int ell_w,
                                              std::uint64_t seed,
                                              NoiseMode mode = NoiseMode::kFresh);

// Default case for a pair: 1 when ell_w > ell_r, else 2. Equal pairs admit
// either case.
int random_case(int ell_r, int ell_w);
bool random_case_admissible(int case_id, int ell_r, int ell_w);
int random_noise_terms(int N, int case_id);

// Interpolates the noise out across all databases. Throws IntegrityError
// when the cells of one position are not consistent with the storage
// noise degree.
ModelPlain reconstruct_plain(std::span<const DatabaseState> states,
                             const FieldParams& params);

// Snapshot of all databases plus the coordinator seeds (and the secret
// permutation, top-r only).
struct Snapshot {
  FieldParams params;
  CoordinatorSetup coordinator;
  std::vector<DatabaseState> states;
  std::vector<std::uint32_t> permutation;  // 1-based, empty unless top-r
};

void write_snapshot(std::ostream& out, const Snapshot& snapshot);
Snapshot read_snapshot(std::istream& in);

}  // namespace pruw
