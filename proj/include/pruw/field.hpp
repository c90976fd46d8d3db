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
#include <initializer_list>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace pruw {

// Error kinds shared across the library.
class DomainError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};
class IntegrityError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};
class ProtocolError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};
class InconclusiveError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Canonical residue in [0, q). Only a Field knows q, so arithmetic goes
// through the Field object.
struct Fe {
  std::uint64_t v = 0;
  friend bool operator==(Fe, Fe) = default;
};

enum class ArithOp { kAdd, kSub, kMul, kDiv };

// Selects whether masks are drawn uniformly or forced to zero. kZero is a
// debug mode for fixtures only: it is NOT private.
enum class NoiseMode { kFresh, kZero };

bool is_prime(std::uint64_t n);

class Field {
 public:
  // q must be a prime below 2^63.
  explicit Field(std::uint64_t q);

  std::uint64_t q() const { return q_; }

  Fe from_int(std::int64_t x) const;
  Fe add(Fe a, Fe b) const {
    std::uint64_t s = a.v + b.v;
    return Fe{s >= q_ ? s - q_ : s};
  }
  Fe sub(Fe a, Fe b) const { return Fe{a.v >= b.v ? a.v - b.v : a.v + q_ - b.v}; }
  Fe neg(Fe a) const { return Fe{a.v == 0 ? 0 : q_ - a.v}; }
  Fe mul(Fe a, Fe b) const {
    return Fe{static_cast<std::uint64_t>(
        static_cast<unsigned __int128>(a.v) * b.v % q_)};
  }
  Fe pow(Fe a, std::uint64_t e) const;
  Fe inv(Fe a) const;  // DomainError on zero
  Fe div(Fe a, Fe b) const { return mul(a, inv(b)); }
  Fe arith(Fe a, Fe b, ArithOp op) const;

  // Number of products of two residues that fit in an unsigned 128-bit
  // accumulator before a reduction is required.
  std::uint64_t lazy_budget() const { return lazy_budget_; }

 private:
  std::uint64_t q_;
  std::uint64_t lazy_budget_;
};

// Deterministic 64-bit generator (splitmix64). Streams are cheap to create,
// which lets every noise cell own a keyed stream.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}
  std::uint64_t next();
  // Uniform in [0, bound), bound > 0, via rejection.
  std::uint64_t below(std::uint64_t bound);
  Fe uniform(const Field& field) { return Fe{below(field.q())}; }
  Fe nonzero(const Field& field) { return Fe{1 + below(field.q() - 1)}; }

 private:
  std::uint64_t state_;
};

// Mixes tags into a base seed; used to key counter-mode noise streams.
std::uint64_t derive_seed(std::uint64_t base,
                          std::initializer_list<std::uint64_t> tags);

std::vector<Fe> seeded_uniform(Rng& rng, const Field& field, std::size_t count);

struct FieldParams {
  Field field{2};
  std::vector<Fe> alphas;  // one per database, 0-based
  std::vector<Fe> fs;

  int N() const { return static_cast<int>(alphas.size()); }
  std::uint64_t q() const { return field.q(); }
};

// f_i = i, alpha_n = f_count + n (both 1-based).
FieldParams allocate_eval_points(int N, int f_count, std::uint64_t q);

// Explicit points, checked against the same invariants. Lets tiny audit
// fields use f = 0, which the deterministic rule never produces.
FieldParams make_field_params(std::uint64_t q, std::vector<Fe> alphas,
                              std::vector<Fe> fs);

void check_field_params(const FieldParams& params);

}  // namespace pruw
