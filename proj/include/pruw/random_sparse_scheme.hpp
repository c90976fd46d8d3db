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

namespace pruw::rsparse {

using pruw::g_index;

// Bits decoded or written correctly per subpacket: floor(N/2) − 1.
int correct_bits(int N);

struct Segment {
  Rational lambda;
  int ell = 0;
};

// Segments are ordered by increasing subpacketization.
struct PhasePlan {
  Rational budget;
  Rational i_star;
  std::vector<Segment> segments;
};

struct SparsePlan {
  int N = 0;
  PhasePlan read, write;
};

PhasePlan optimize_phase(int N, const Rational& budget);
SparsePlan optimize_plan(int N, const Rational& D_r, const Rational& D_w);

// Case for an (ell_r, ell_w) pair under this plan. Equal pairs take case 1
// when the read budget is the smaller one, so odd N saves a download per
// subpacket; otherwise case 2.
int region_case(const SparsePlan& plan, int ell_r, int ell_w);

// One stretch of the unit interval with a fixed (ell_r, ell_w) pair.
struct Piece {
  Rational fraction;
  int ell_r = 0, ell_w = 0, case_id = 0;
};
std::vector<Piece> overlap_pieces(const SparsePlan& plan);

struct Layout {
  std::vector<Region> regions;
  std::size_t L = 0;
  std::size_t L_padded = 0;
};

// Lays both phases' segment boundaries on the lcm grid of every
// subpacketization in use and cuts the model into regions.
Layout realize_plan(const SparsePlan& plan, std::size_t L);

// Patterns per region: γ_r for case-1 reads, γ_w for case-2 writes, 1
// otherwise.
int read_patterns(const Region& region);
int write_patterns(const Region& region);
// Databases whose answers a read needs: 2*floor(N/2) in case 1, N in case 2.
int read_databases(int N, const Region& region);
// Database left out of case-2 writes when N is odd, else -1. 0-based.
int excluded_database(int N, const Region& region);

// J sets per region, 1-based positions within a subpacket, ascending.
struct RegionSets {
  std::vector<std::vector<int>> read;
  std::vector<std::vector<int>> write;
};

std::vector<RegionSets> draw_jsets(std::span<const Region> regions, int N, Rng& rng);
void check_jsets(std::span<const Region> regions, std::span<const RegionSets> sets,
                 int N);

// f index (0-based) used by row i (0-based) of pattern s for a unit of
// `unit` bits inside the region.
std::size_t pattern_f_index(const Region& region, int s, int unit, int i);

// [region][n] → concatenation of all patterns, each unit × M entries.
struct PhaseQuery {
  int theta = 0;
  int M = 0;
  std::vector<std::vector<std::vector<Fe>>> per_region;
};

PhaseQuery build_read_query(int theta, int M, std::span<const Region> regions,
                            std::span<const RegionSets> sets, const FieldParams& fp,
                            Rng& rng, NoiseMode mode = NoiseMode::kFresh);

// Database side: one answer per read subpacket of the region.
std::vector<Fe> answer_read(const DatabaseState& state, const Region& region,
                            std::span<const Fe> region_query, const FieldParams& fp);

// User side: values at J positions (in J order) for pattern s.
std::vector<Fe> decode_read(std::span<const Fe> answers, const Region& region, int s,
                            std::span<const int> J, const FieldParams& fp);

PhaseQuery build_write_query(int theta, int M, std::span<const Region> regions,
                             std::span<const RegionSets> sets, const FieldParams& fp,
                             Rng& rng, NoiseMode mode = NoiseMode::kFresh);

// [region][n] → one combined symbol per write subpacket, or nothing for
// the excluded database.
struct WriteUpdate {
  std::vector<std::vector<std::optional<std::vector<Fe>>>> per_region;
};

// deltas: L_padded values for the submodel being written.
WriteUpdate build_write_update(std::span<const Fe> deltas, std::span<const Region> regions,
                               std::span<const RegionSets> sets, const FieldParams& fp,
                               Rng& rng, NoiseMode mode = NoiseMode::kFresh);

// Database side: incremental update U_n · Q̃_n (with the odd-N shaping
// factor in case 2) added to the region's cells.
void apply_write(DatabaseState& state, const Region& region,
                 std::span<const Fe> region_query, std::span<const Fe> updates,
                 const FieldParams& fp);

struct Costs {
  Rational read, write;                  // λ-weighted over the plan
  Rational read_closed, write_closed;  // closed form
};

Costs costs_random(int N, const SparsePlan& plan);

struct DistortionReport {
  Rational read;
  Rational write;
};

// (ell − floor(N/2) + 1)/ell blended by the plan weights.
DistortionReport plan_distortion(int N, const SparsePlan& plan);

}  // namespace pruw::rsparse
