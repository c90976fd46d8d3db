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
#include <string>
#include <vector>

namespace pruw {

// One distribution-equality check. Thresholds travel with the result.
struct AuditResult {
  std::string name;        // e.g. "basic/db0/theta/Q0+U1"
  std::string observable;  // "query", "update", "query+update", "positions"
  std::string hypotheses;  // e.g. "theta=1 vs theta=2"
  std::string statistic;   // "tvd" or "chi2"
  std::uint64_t samples = 0;
  double value = 0;
  double threshold = 0;
  int dof = 0;  // chi2 only
  bool pass = false;
};

struct AuditOptions {
  std::uint64_t samples = 100000;
  double tvd_threshold = 0.02;
  double significance = 0.01;
  std::uint64_t seed = 1;
  bool disable_noise = false;  // power check: every audit should fail
};

// 0.5·Σ|p_a − p_b| over a shared support.
double tvd(const std::vector<std::uint64_t>& counts_a, std::uint64_t n_a,
           const std::vector<std::uint64_t>& counts_b, std::uint64_t n_b);

// Expected TVD between two independent empirical distributions of n
// samples each drawn from the uniform law on `cells` outcomes.
double expected_null_tvd(std::uint64_t cells, std::uint64_t samples);

// Pearson statistic against the uniform law on counts.size() cells.
double chi_square_uniform(const std::vector<std::uint64_t>& counts, std::uint64_t n);
double chi_square_critical(int dof, double significance);

// Throws InconclusiveError when the sample count cannot resolve the
// threshold: 2× the expected null TVD must stay below it.
void require_tvd_power(std::uint64_t cells, std::uint64_t samples, double threshold);

// Per-database views of the basic scheme at q = 5, N = 4, M = 2, P = 2.
// Query coordinates are judged under θ = 1 vs 2; update coordinates under
// Δ = 0 vs Δ = 1. Singles plus every pair touching the judged kind.
std::vector<AuditResult> audit_basic(const AuditOptions& opt);

// Permuted positions of a 2-subset of 5 subpackets under a fresh
// coordinator permutation per trial, for true sets {1,4} and {2,3}.
// χ² against uniform over the 10 subsets.
std::vector<AuditResult> audit_topr_positions(const AuditOptions& opt);

// Random-sparse read query, write query and update at q = 5, N = 4.
std::vector<AuditResult> audit_random(const AuditOptions& opt);

// suite: basic, topr, random or all.
std::vector<AuditResult> run_audit_suite(const std::string& suite, const AuditOptions& opt);

}  // namespace pruw
