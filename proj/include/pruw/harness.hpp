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
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "pruw/basic_scheme.hpp"
#include "pruw/field.hpp"
#include "pruw/random_sparse_scheme.hpp"
#include "pruw/rational.hpp"
#include "pruw/storage.hpp"
#include "pruw/topr_scheme.hpp"
#include "pruw/wire.hpp"

namespace pruw {

enum class SchemeKind : std::uint8_t { kBasic, kTopR, kRandom };

const char* scheme_name(SchemeKind kind);
SchemeKind parse_scheme(const std::string& name);  // ConfigError on unknown

inline constexpr std::uint64_t kDefaultPrime = 2147483647;  // 2^31 − 1

struct ExperimentConfig {
  SchemeKind scheme = SchemeKind::kBasic;
  int N = 4;
  int M = 2;
  std::size_t L = 0;  // top-r derives it from P when left at 0
  int P = 0;          // top-r subpacket count
  std::uint64_t q = kDefaultPrime;
  std::uint64_t position_q = 0;  // alphabet for position symbols, 0 = q
  std::uint64_t seed = 1;
  int iterations = 1;
  std::vector<int> thetas;  // 1-based, cycled; empty = 1, 2, …, M, 1, …
  int T1 = 0, T2 = 0, T3 = 0;  // basic overrides; 0 = optimal
  int case_id = 1;             // top-r
  Rational r{0}, r_prime{0};   // top-r rates
  Rational D_r{0}, D_w{0};     // random-sparse budgets
  std::vector<int> permutation;  // top-r fixed P̃, 1-based
  std::vector<int> downlink;     // top-r first-iteration Ṽ, permuted indices
  std::vector<int> sparse_set;   // top-r true subpackets given top scores
  bool disable_noise = false;    // INSECURE, fixtures and power checks only

  std::uint64_t position_alphabet() const { return position_q ? position_q : q; }
};

// Throws ConfigError when any scheme precondition fails.
void validate(const ExperimentConfig& cfg);

// Per-iteration synthetic update for submodel θ: one Δ per position of
// the (unpadded) model, plus per-subpacket significance scores for top-r.
struct SyntheticUpdate {
  std::vector<Fe> deltas;
  std::vector<Rational> scores;
};

using UpdateSource = std::function<SyntheticUpdate(
    const Field& field, int iteration, int theta, std::size_t L, int P)>;

// Nonzero Δ everywhere, keyed by (seed, iteration). Scores favour
// `sparse_set` when given, else are seeded integers.
UpdateSource synthetic_updates(std::uint64_t seed, std::vector<int> sparse_set = {});

struct MeasuredDistortion {
  Rational read{0};
  Rational write{0};
};

struct IterationResult {
  int iteration = 0;
  int session = 0;
  int theta = 0;
  CostLedger ledger;
  std::optional<MeasuredDistortion> distortion;  // random-sparse only
  std::vector<int> downlink;                     // top-r Ṽ
  std::vector<int> read_subpackets;              // top-r V = P̃(Ṽ)
  std::vector<int> write_positions;              // top-r permuted positions
  std::vector<int> written_subpackets;           // top-r true chosen set
  bool read_ok = false;
  bool write_ok = false;
  std::string failure;
  bool pass() const { return read_ok && write_ok; }
};

// Databases, coordinator and one user per time instance over a logged
// simulated wire. The plain oracle model tracks what storage should hold.
class SimNetwork {
 public:
  explicit SimNetwork(const ExperimentConfig& cfg);

  IterationResult run_iteration(int theta, const UpdateSource& updates,
                                std::uint64_t seed);

  const ExperimentConfig& config() const { return cfg_; }
  const FieldParams& field_params() const { return fp_; }
  const std::vector<DatabaseState>& states() const { return states_; }
  std::vector<DatabaseState>& mutable_states() { return states_; }
  const ModelPlain& oracle() const { return oracle_; }
  const FrameLog& log() const { return *log_; }
  std::size_t padded_length() const { return states_.front().L_padded; }

  const std::optional<basic::BasicParams>& basic_params() const { return basic_; }
  const std::optional<topr::PermutationSetup>& permutation() const { return topr_; }
  const std::optional<rsparse::SparsePlan>& plan() const { return plan_; }
  const std::vector<Region>& regions() const { return regions_; }
  const std::vector<rsparse::RegionSets>& jsets() const { return jsets_; }

  Snapshot snapshot() const;

 private:
  NoiseMode mode() const {
    return cfg_.disable_noise ? NoiseMode::kZero : NoiseMode::kFresh;
  }
  void log_frame(Phase phase, FrameType type, Direction dir, int db, long sub,
                 std::uint64_t symbols, std::vector<int> indices = {});
  void run_basic(IterationResult& out, const SyntheticUpdate& upd, Rng& rng);
  void run_topr(IterationResult& out, const SyntheticUpdate& upd, Rng& rng);
  void run_random(IterationResult& out, const SyntheticUpdate& upd, Rng& rng);
  void check_storage(IterationResult& out) const;

  ExperimentConfig cfg_;
  FieldParams fp_;
  CoordinatorSetup coord_;
  std::vector<DatabaseState> states_;
  ModelPlain oracle_;
  std::unique_ptr<FrameLog> log_;
  int session_ = 0;
  int iteration_ = 0;

  std::optional<basic::BasicParams> basic_;
  std::optional<topr::PermutationSetup> topr_;
  std::vector<int> prev_positions_;
  std::optional<rsparse::SparsePlan> plan_;
  std::vector<Region> regions_;
  std::vector<rsparse::RegionSets> jsets_;
};

// Model with nonzero entries, so every skipped symbol counts as distorted.
ModelPlain synthetic_model(const Field& field, int M, std::size_t L, std::uint64_t seed);

struct AnalyticCosts {
  Rational read{0}, write{0};
  std::optional<Rational> read_exact, write_exact;  // absent when irrational
  double read_value = 0, write_value = 0;
  std::string note;
};

AnalyticCosts analytic_costs(const ExperimentConfig& cfg);

struct ExperimentResult {
  ExperimentConfig config;
  std::vector<IterationResult> iterations;
  AnalyticCosts analytic;
  std::optional<rsparse::DistortionReport> planned_distortion;
  std::string trace;
  bool pass() const;
};

// Runs cfg.iterations iterations with synthetic updates.
ExperimentResult run_experiment(const ExperimentConfig& cfg);

int theta_for(const ExperimentConfig& cfg, int iteration);

// Scheme-specific knobs as "k=v;k=v", for cost tables.
std::string knob_string(const ExperimentConfig& cfg);

struct CostRow {
  std::string scheme;
  int N = 0;
  std::string knobs;
  Rational measured_read{0}, measured_write{0};
  AnalyticCosts analytic;
  bool match = false;
};

// One iteration per config; measured vs closed form.
std::vector<CostRow> verify_costs(const std::vector<ExperimentConfig>& sweep);

}  // namespace pruw
