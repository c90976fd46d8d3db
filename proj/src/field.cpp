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

#include "pruw/field.hpp"

#include <set>

namespace pruw {

namespace {

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % m);
}

std::uint64_t powmod(std::uint64_t a, std::uint64_t e, std::uint64_t m) {
  std::uint64_t r = 1 % m;
  a %= m;
  while (e > 0) {
    if (e & 1) r = mulmod(r, a, m);
    a = mulmod(a, a, m);
    e >>= 1;
  }
  return r;
}

}  // namespace

// Deterministic Miller-Rabin; these bases cover all 64-bit inputs.
bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t p : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
    if (n % p == 0) return n == p;
  }
  std::uint64_t d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  for (std::uint64_t a : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
    std::uint64_t x = powmod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int i = 1; i < s; ++i) {
      x = mulmod(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

Field::Field(std::uint64_t q) : q_(q) {
  if (q >= (std::uint64_t{1} << 63) || !is_prime(q)) {
    throw ConfigError("field modulus must be a prime below 2^63, got " +
                      std::to_string(q));
  }
  unsigned __int128 sq = static_cast<unsigned __int128>(q - 1) * (q - 1);
  if (sq == 0) {
    lazy_budget_ = UINT64_MAX;
  } else {
    unsigned __int128 budget = ~static_cast<unsigned __int128>(0) / sq;
    lazy_budget_ = budget > UINT64_MAX ? UINT64_MAX
                                       : static_cast<std::uint64_t>(budget);
  }
}

Fe Field::from_int(std::int64_t x) const {
  std::int64_t r = x % static_cast<std::int64_t>(q_);
  if (r < 0) r += static_cast<std::int64_t>(q_);
  return Fe{static_cast<std::uint64_t>(r)};
}

Fe Field::pow(Fe a, std::uint64_t e) const { return Fe{powmod(a.v, e, q_)}; }

Fe Field::inv(Fe a) const {
  if (a.v == 0) throw DomainError("division by zero in F_" + std::to_string(q_));
  return pow(a, q_ - 2);
}

Fe Field::arith(Fe a, Fe b, ArithOp op) const {
  switch (op) {
    case ArithOp::kAdd:
      return add(a, b);
    case ArithOp::kSub:
      return sub(a, b);
    case ArithOp::kMul:
      return mul(a, b);
    case ArithOp::kDiv:
      return div(a, b);
  }
  throw DomainError("unknown arithmetic op");
}

std::uint64_t Rng::next() {
  std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

std::uint64_t Rng::below(std::uint64_t bound) {
  // Reject the top partial block so every residue is equally likely.
  std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
  for (;;) {
    std::uint64_t x = next();
    if (x < limit) return x % bound;
  }
}

std::uint64_t derive_seed(std::uint64_t base,
                          std::initializer_list<std::uint64_t> tags) {
  Rng mix(base ^ 0x5052555731ULL);
  std::uint64_t h = mix.next();
  for (std::uint64_t t : tags) {
    Rng step(h ^ (t * 0xd6e8feb86659fd93ULL));
    h = step.next();
  }
  return h;
}

std::vector<Fe> seeded_uniform(Rng& rng, const Field& field, std::size_t count) {
  std::vector<Fe> out(count);
  for (auto& x : out) x = rng.uniform(field);
  return out;
}

void check_field_params(const FieldParams& params) {
  std::set<std::uint64_t> seen_alpha;
  for (Fe a : params.alphas) {
    if (a.v >= params.q()) throw ConfigError("alpha not reduced mod q");
    if (a.v == 0) throw ConfigError("alpha must be nonzero");
    if (!seen_alpha.insert(a.v).second) throw ConfigError("alphas not distinct");
  }
  std::set<std::uint64_t> seen_f;
  for (Fe f : params.fs) {
    if (f.v >= params.q()) throw ConfigError("f not reduced mod q");
    if (!seen_f.insert(f.v).second) throw ConfigError("fs not distinct");
    if (seen_alpha.count(f.v)) throw ConfigError("fs and alphas overlap");
  }
}

FieldParams allocate_eval_points(int N, int f_count, std::uint64_t q) {
  if (N < 1 || f_count < 0) throw ConfigError("bad evaluation point counts");
  if (q <= static_cast<std::uint64_t>(N) + static_cast<std::uint64_t>(f_count)) {
    throw ConfigError("q=" + std::to_string(q) + " too small for N=" +
                      std::to_string(N) + " and " + std::to_string(f_count) +
                      " f values");
  }
  FieldParams params{Field(q), {}, {}};
  for (int i = 1; i <= f_count; ++i) params.fs.push_back(Fe{std::uint64_t(i)});
  for (int n = 1; n <= N; ++n) {
    params.alphas.push_back(Fe{std::uint64_t(f_count + n)});
  }
  check_field_params(params);
  return params;
}

FieldParams make_field_params(std::uint64_t q, std::vector<Fe> alphas,
                              std::vector<Fe> fs) {
  FieldParams params{Field(q), std::move(alphas), std::move(fs)};
  check_field_params(params);
  return params;
}

}  // namespace pruw
