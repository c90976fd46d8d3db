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

#include "pruw/topr_scheme.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>

#include "pruw/kernels.hpp"
#include "pruw/poly.hpp"

namespace pruw::topr {

TopRParams TopRParams::make(int N, int case_id) {
  TopRVariant v = topr_variant(N, case_id);
  return TopRParams{N, v.case_id, v.ell, v.x};
}

namespace {

const TopRVariant& variant_of(const DatabaseState& state) {
  const auto* v = std::get_if<TopRVariant>(&state.variant);
  if (!v) throw DomainError("database does not hold top-r storage");
  return *v;
}

void check_perm(std::span<const int> perm) {
  std::vector<int> sorted(perm.begin(), perm.end());
  std::sort(sorted.begin(), sorted.end());
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    if (sorted[i] != static_cast<int>(i) + 1) {
      throw ConfigError("not a permutation of 1..P");
    }
  }
}

int subpackets_of(const DatabaseState& state, const TopRParams& params) {
  const TopRVariant& v = variant_of(state);
  if (v.case_id != params.case_id || v.ell != params.ell) {
    throw DomainError("storage variant does not match top-r params");
  }
  return static_cast<int>(state.L_padded / params.ell);
}

}  // namespace

std::vector<int> random_permutation(int P, Rng& rng) {
  std::vector<int> perm(P);
  std::iota(perm.begin(), perm.end(), 1);
  for (int i = P - 1; i > 0; --i) {
    std::swap(perm[i], perm[rng.below(static_cast<std::uint64_t>(i) + 1)]);
  }
  return perm;
}

std::vector<int> reversing_pattern(std::span<const int> perm) {
  const int P = static_cast<int>(perm.size());
  std::vector<int> R(static_cast<std::size_t>(P) * P, 0);
  for (int b = 0; b < P; ++b) R[static_cast<std::size_t>(perm[b] - 1) * P + b] = 1;
  return R;
}

std::vector<Fe> denoised_reversing(std::span<const int> perm, const TopRParams& params,
                                   const FieldParams& fp, int n) {
  const int P = static_cast<int>(perm.size());
  std::vector<int> R = reversing_pattern(perm);
  if (params.case_id == 1) {
    std::vector<Fe> out(R.size());
    for (std::size_t i = 0; i < R.size(); ++i) out[i] = Fe{std::uint64_t(R[i])};
    return out;
  }
  const int ell = params.ell;
  const std::size_t D = static_cast<std::size_t>(P) * ell;
  std::vector<Fe> out(D * D, Fe{0});
  for (int a = 0; a < P; ++a) {
    for (int b = 0; b < P; ++b) {
      if (!R[static_cast<std::size_t>(a) * P + b]) continue;
      for (int j = 0; j < ell; ++j) {
        out[(a * ell + j) * D + b * ell + j] =
            fp.field.inv(fp.field.sub(fp.fs[j], fp.alphas[n]));
      }
    }
  }
  return out;
}

PermutationSetup coordinator_setup(int P, const TopRParams& params,
                                   const FieldParams& fp, std::uint64_t seed,
                                   NoiseMode mode, std::span<const int> fixed_perm) {
  if (P < 1) throw ConfigError("top-r needs P >= 1");
  if (fp.N() != params.N) throw DomainError("alphas do not match N");
  if (static_cast<int>(fp.fs.size()) < params.ell) throw DomainError("not enough f values");
  PermutationSetup setup{P, params, {}, {}};
  if (!fixed_perm.empty()) {
    if (static_cast<int>(fixed_perm.size()) != P) throw ConfigError("permutation length != P");
    setup.perm.assign(fixed_perm.begin(), fixed_perm.end());
    check_perm(setup.perm);
  } else if (mode == NoiseMode::kZero) {
    setup.perm.resize(P);
    std::iota(setup.perm.begin(), setup.perm.end(), 1);
  } else {
    Rng rng(derive_seed(seed, {1}));
    setup.perm = random_permutation(P, rng);
  }

  const Field& field = fp.field;
  const std::size_t D = params.dim(P);
  std::vector<Fe> noise(D * D, Fe{0});
  if (mode == NoiseMode::kFresh) {
    Rng rng(derive_seed(seed, {2}));
    for (auto& z : noise) z = rng.uniform(field);
  }
  for (int n = 0; n < params.N; ++n) {
    std::vector<Fe> Rn = denoised_reversing(setup.perm, params, fp, n);
    // Case 1 scales the shared noise by ∏(f_i − α_n); case 2 adds it as is.
    Fe scale{1};
    if (params.case_id == 1) {
      for (int i = 0; i < params.ell; ++i) {
        scale = field.mul(scale, field.sub(fp.fs[i], fp.alphas[n]));
      }
    }
    for (std::size_t i = 0; i < Rn.size(); ++i) {
      Rn[i] = field.add(Rn[i], field.mul(scale, noise[i]));
    }
    setup.reversing.push_back(std::move(Rn));
  }
  return setup;
}

void install_reversing(std::vector<DatabaseState>& states,
                       const PermutationSetup& setup) {
  for (auto& s : states) s.reversing = setup.reversing.at(s.n);
}

ReadQuery build_read_query(int theta, int M, const TopRParams& params,
                           const FieldParams& fp, Rng& rng, NoiseMode mode) {
  if (theta < 1 || theta > M) throw DomainError("theta out of range");
  const Field& field = fp.field;
  const int ell = params.ell;
  std::vector<Fe> noise(static_cast<std::size_t>(ell) * M, Fe{0});
  if (mode == NoiseMode::kFresh) {
    for (auto& z : noise) z = rng.uniform(field);
  }
  ReadQuery query{theta, M, {}};
  for (int n = 0; n < params.N; ++n) {
    std::vector<Fe> q(noise.size());
    for (int k = 0; k < ell; ++k) {
      const Fe gap = field.sub(fp.fs[k], fp.alphas[n]);
      for (int m = 0; m < M; ++m) {
        const Fe z = noise[k * M + m];
        const bool hit = m == theta - 1;
        if (params.case_id == 1) {
          q[k * M + m] = field.add(hit ? field.inv(gap) : Fe{0}, z);
        } else {
          q[k * M + m] = field.add(hit ? Fe{1} : Fe{0}, field.mul(gap, z));
        }
      }
    }
    query.per_db.push_back(std::move(q));
  }
  return query;
}

std::vector<Fe> answer_sparse(const DatabaseState& state, std::span<const Fe> query,
                              std::span<const int> downlink,
                              const TopRParams& params, const FieldParams& fp) {
  const int P = subpackets_of(state, params);
  const int ell = params.ell;
  const int M = state.M;
  if (query.size() != static_cast<std::size_t>(ell) * M) {
    throw DomainError("query shape mismatch");
  }
  const std::size_t D = params.dim(P);
  if (state.reversing.size() != D * D) throw DomainError("reversing matrix missing");
  const Field& field = fp.field;
  std::vector<Fe> answers;
  answers.reserve(downlink.size());
  if (params.case_id == 1) {
    std::vector<Fe> dots(P);
    kernels::dot_rows(field, state.cells, static_cast<std::size_t>(ell) * M, query, 1, dots);
    for (int v : downlink) {
      if (v < 1 || v > P) throw ProtocolError("downlink index out of range");
      Fe acc{0};
      for (int a = 0; a < P; ++a) {
        acc = field.add(acc, field.mul(state.reversing[a * D + (v - 1)], dots[a]));
      }
      answers.push_back(acc);
    }
    return answers;
  }
  std::vector<Fe> dots(D);
  kernels::dot_rows(field, state.cells, M, query, ell, dots);
  for (int v : downlink) {
    if (v < 1 || v > P) throw ProtocolError("downlink index out of range");
    Fe acc{0};
    for (std::size_t row = 0; row < D; ++row) {
      // R̂: the ell columns of block v summed.
      Fe col_sum{0};
      for (int j = 0; j < ell; ++j) {
        col_sum = field.add(col_sum, state.reversing[row * D + (v - 1) * ell + j]);
      }
      acc = field.add(acc, field.mul(col_sum, dots[row]));
    }
    answers.push_back(acc);
  }
  return answers;
}

std::vector<Fe> decode_subpacket(std::span<const Fe> answers, const TopRParams& params,
                                 const FieldParams& fp) {
  if (static_cast<int>(answers.size()) != params.N) {
    throw DomainError("top-r decode needs one answer per database");
  }
  if (params.ell + params.answer_noise_terms() != params.N) {
    throw ConfigError("N does not match the top-r subpacketization");
  }
  std::span<const Fe> fs(fp.fs.data(), params.ell);
  auto bits = solve_decode(fp.field, decode_system(fp.field, fs, fp.alphas, answers,
                                                   params.answer_noise_terms()));
  bits.resize(params.ell);
  return bits;
}

SparseRead read_sparse(const ReadQuery& query, std::span<const int> downlink,
                       const PermutationSetup& setup,
                       std::span<const DatabaseState> states, const FieldParams& fp) {
  const int N = setup.params.N;
  std::vector<std::vector<Fe>> per_db(N);
  for (const auto& state : states) {
    per_db[state.n] = answer_sparse(state, query.per_db[state.n], downlink,
                                    setup.params, fp);
  }
  SparseRead out;
  for (std::size_t i = 0; i < downlink.size(); ++i) {
    std::vector<Fe> answers(N);
    for (int n = 0; n < N; ++n) answers[n] = per_db[n][i];
    out.true_indices.push_back(setup.perm[downlink[i] - 1]);
    out.subpackets.push_back(decode_subpacket(answers, setup.params, fp));
  }
  return out;
}

int sparse_count(int P, const Rational& r) {
  if (r < 0 || r > 1) throw ConfigError("sparsification rate must lie in [0, 1]");
  return static_cast<int>(round_nearest(r * P));
}

std::vector<int> select_top(std::span<const Rational> scores, int count) {
  for (const auto& s : scores) {
    if (s < 0) throw ConfigError("significance scores must be non-negative");
  }
  std::vector<int> order(scores.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](int a, int b) { return scores[a] > scores[b]; });
  order.resize(std::min<std::size_t>(count, order.size()));
  std::vector<int> chosen;
  for (int i : order) chosen.push_back(i + 1);
  std::sort(chosen.begin(), chosen.end());
  return chosen;
}

std::vector<int> permuted_positions(std::span<const int> perm,
                                    std::span<const int> true_indices) {
  std::set<int> wanted(true_indices.begin(), true_indices.end());
  std::vector<int> positions;
  for (std::size_t k = 0; k < perm.size(); ++k) {
    if (wanted.count(perm[k])) positions.push_back(static_cast<int>(k) + 1);
  }
  return positions;
}

SparseWrite build_sparse_write(
    const std::vector<std::pair<int, std::vector<Fe>>>& deltas,
    std::span<const int> perm, const TopRParams& params, const FieldParams& fp,
    Rng& rng, NoiseMode mode) {
  const int P = static_cast<int>(perm.size());
  const int ell = params.ell;
  const Field& field = fp.field;
  std::span<const Fe> fs(fp.fs.data(), ell);
  std::vector<const std::vector<Fe>*> by_subpacket(P + 1, nullptr);
  for (const auto& [s, d] : deltas) {
    if (s < 1 || s > P) throw DomainError("subpacket index out of range");
    if (by_subpacket[s]) throw ProtocolError("subpacket chosen twice");
    if (static_cast<int>(d.size()) != ell) throw DomainError("delta length != ell");
    by_subpacket[s] = &d;
  }
  std::vector<Fe> noise(P + 1, Fe{0});
  if (mode == NoiseMode::kFresh) {
    for (auto& z : noise) z = rng.uniform(field);
  }
  SparseWrite out;
  for (int k = 1; k <= P; ++k) {
    if (by_subpacket[perm[k - 1]]) out.positions.push_back(k);
  }
  for (int n = 0; n < params.N; ++n) {
    SparseWritePayload payload;
    for (int k : out.positions) {
      const int s = perm[k - 1];
      const Fe z = noise[s];
      payload.updates.push_back(combine_update(field, *by_subpacket[s], fs,
                                               fp.alphas[n], std::span<const Fe>(&z, 1)));
      payload.positions.push_back(k);
    }
    out.per_db.push_back(std::move(payload));
  }
  return out;
}

void apply_sparse_write(DatabaseState& state, std::span<const Fe> query,
                        const SparseWritePayload& payload, const TopRParams& params,
                        const FieldParams& fp) {
  const int P = subpackets_of(state, params);
  const int ell = params.ell;
  const int M = state.M;
  if (query.size() != static_cast<std::size_t>(ell) * M) {
    throw DomainError("query shape mismatch");
  }
  if (payload.updates.size() != payload.positions.size()) {
    throw ProtocolError("update/position count mismatch");
  }
  std::set<int> seen;
  for (int k : payload.positions) {
    if (k < 1 || k > P) throw ProtocolError("permuted position out of range");
    if (!seen.insert(k).second) throw ProtocolError("duplicate permuted position");
  }
  if (payload.positions.empty()) return;
  const std::size_t D = params.dim(P);
  if (state.reversing.size() != D * D) throw DomainError("reversing matrix missing");
  const Field& field = fp.field;
  // T_n = R_n · V̂ (case 2 spreads each V̂ entry over its ell columns).
  std::vector<Fe> T(D, Fe{0});
  const auto rows = static_cast<std::int64_t>(D);
#pragma omp parallel for schedule(static)
  for (std::int64_t row = 0; row < rows; ++row) {
    Fe acc{0};
    for (std::size_t j = 0; j < payload.positions.size(); ++j) {
      const int k = payload.positions[j] - 1;
      Fe weight{0};
      if (params.case_id == 1) {
        weight = state.reversing[row * D + k];
      } else {
        for (int t = 0; t < ell; ++t) {
          weight = field.add(weight, state.reversing[row * D + k * ell + t]);
        }
      }
      acc = field.add(acc, field.mul(weight, payload.updates[j]));
    }
    T[row] = acc;
  }
  std::vector<Fe> coeffs(static_cast<std::size_t>(P) * ell);
  for (int a = 0; a < P; ++a) {
    for (int j = 0; j < ell; ++j) {
      const Fe gap = field.sub(fp.fs[j], fp.alphas[state.n]);
      const Fe t = params.case_id == 1 ? T[a] : T[a * ell + j];
      coeffs[a * ell + j] = field.mul(gap, t);
    }
  }
  kernels::axpy_rows(field, state.cells, M, coeffs, query, ell);
}

std::vector<int> write_sparse(std::span<const Fe> all_deltas,
                              std::span<const Rational> scores, const Rational& r,
                              const PermutationSetup& setup, const ReadQuery& query,
                              std::vector<DatabaseState>& states,
                              const FieldParams& fp, Rng& rng, NoiseMode mode) {
  const int P = setup.P;
  const int ell = setup.params.ell;
  if (static_cast<int>(scores.size()) != P) throw DomainError("one score per subpacket");
  if (all_deltas.size() != static_cast<std::size_t>(P) * ell) {
    throw DomainError("deltas must cover every subpacket");
  }
  std::vector<std::pair<int, std::vector<Fe>>> chosen;
  for (int s : select_top(scores, sparse_count(P, r))) {
    auto first = all_deltas.begin() + static_cast<std::ptrdiff_t>(s - 1) * ell;
    chosen.emplace_back(s, std::vector<Fe>(first, first + ell));
  }
  SparseWrite write = build_sparse_write(chosen, setup.perm, setup.params, fp, rng, mode);
  for (auto& state : states) {
    apply_sparse_write(state, query.per_db[state.n], write.per_db[state.n],
                       setup.params, fp);
  }
  return write.positions;
}

std::optional<int> exact_log(std::uint64_t q, std::uint64_t P) {
  if (P == 0 || q < 2) return std::nullopt;
  unsigned __int128 power = 1;
  int k = 0;
  while (power < P) {
    power *= q;
    ++k;
  }
  if (power == P) return k;
  return std::nullopt;
}

int position_symbols(std::uint64_t q, std::uint64_t P) {
  if (P == 0 || q < 2) throw DomainError("bad position alphabet");
  unsigned __int128 power = 1;
  int k = 0;
  while (power < P) {
    power *= q;
    ++k;
  }
  return k;
}

TopRCosts costs_topr(int N, int P, std::uint64_t q, const Rational& r,
                     const Rational& r_prime, int case_id) {
  topr_variant(N, case_id);  // ell must be integral
  const int c = case_id == 1 ? 4 : 2;
  const Rational derived_den = 1 - Rational(case_id == 1 ? 2 : 4, N);
  const Rational stated_den = 1 - Rational(2, N);
  auto read_num = [&](auto log_p) {
    return c * r_prime + Rational(c, N) * (1 + r_prime) * log_p;
  };
  auto write_num = [&](auto log_p) { return c * r * (1 + log_p); };

  TopRCosts out;
  if (auto k = exact_log(q, P)) {
    const Rational lg(*k);
    auto make = [](Rational v) { return CostValue{v, to_double(v)}; };
    out.read = make(read_num(lg) / derived_den);
    out.write = make(write_num(lg) / derived_den);
    out.read_stated = make(read_num(lg) / stated_den);
    out.write_stated = make(write_num(lg) / stated_den);
    return out;
  }
  const double lg = std::log(static_cast<double>(P)) / std::log(static_cast<double>(q));
  const double rp = to_double(r_prime);
  const double rr = to_double(r);
  const double read = c * rp + (static_cast<double>(c) / N) * (1 + rp) * lg;
  const double write = c * rr * (1 + lg);
  out.read = CostValue{std::nullopt, read / to_double(derived_den)};
  out.write = CostValue{std::nullopt, write / to_double(derived_den)};
  out.read_stated = CostValue{std::nullopt, read / to_double(stated_den)};
  out.write_stated = CostValue{std::nullopt, write / to_double(stated_den)};
  return out;
}

}  // namespace pruw::topr
