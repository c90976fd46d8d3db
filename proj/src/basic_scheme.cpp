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

#include "pruw/basic_scheme.hpp"

#include "pruw/kernels.hpp"
#include "pruw/poly.hpp"

namespace pruw::basic {

BasicParams BasicParams::make(int N, int T1, int T2, int T3) {
  BasicVariant v = basic_variant(N, T1, T2, T3);
  BasicParams p{N, T1, T2, T3, v.ell, {}};
  const int f_size = 2 * T1 - N - T3 + 1;
  for (int n = 0; n < f_size; ++n) p.f_set.push_back(n);
  return p;
}

bool BasicParams::in_f_set(int n) const {
  for (int r : f_set) {
    if (r == n) return true;
  }
  return false;
}

BasicParams optimal_params(int N) {
  if (N < 4) throw ConfigError("basic scheme needs N >= 4");
  return BasicParams::make(N, (N + 1) / 2, 1, 1);
}

namespace {

void check_params(const BasicParams& params, const FieldParams& fp) {
  if (fp.N() != params.N) throw DomainError("alphas do not match N");
  if (static_cast<int>(fp.fs.size()) < params.ell) {
    throw DomainError("not enough f values for ell");
  }
}

const BasicVariant& variant_of(const DatabaseState& state) {
  const auto* v = std::get_if<BasicVariant>(&state.variant);
  if (!v) throw DomainError("database does not hold basic-scheme storage");
  return *v;
}

}  // namespace

ReadQuery build_read_query(int theta, int M, const BasicParams& params,
                           const FieldParams& fp, Rng& rng, NoiseMode mode) {
  if (theta < 1 || theta > M) throw DomainError("theta out of range");
  check_params(params, fp);
  const Field& field = fp.field;
  const int ell = params.ell;
  // Z̃[k][i][m], shared by every database.
  std::vector<Fe> noise(static_cast<std::size_t>(ell) * params.T2 * M, Fe{0});
  if (mode == NoiseMode::kFresh) {
    for (auto& z : noise) z = rng.uniform(field);
  }
  ReadQuery query{theta, M, {}};
  for (int n = 0; n < params.N; ++n) {
    const Fe alpha = fp.alphas[n];
    std::vector<Fe> q(static_cast<std::size_t>(ell) * M);
    for (int k = 0; k < ell; ++k) {
      for (int m = 0; m < M; ++m) {
        Fe acc{0};
        for (int i = params.T2 - 1; i >= 0; --i) {
          acc = field.add(field.mul(acc, alpha),
                          noise[(static_cast<std::size_t>(k) * params.T2 + i) * M + m]);
        }
        if (m == theta - 1) {
          acc = field.add(acc, field.inv(field.sub(fp.fs[k], alpha)));
        }
        q[k * M + m] = acc;
      }
    }
    query.per_db.push_back(std::move(q));
  }
  return query;
}

std::vector<Fe> answer_read(const DatabaseState& state, std::span<const Fe> query,
                            const FieldParams& fp) {
  const int ell = variant_of(state).ell;
  const std::size_t width = static_cast<std::size_t>(ell) * state.M;
  if (query.size() != width) throw DomainError("query shape mismatch");
  std::vector<Fe> answers(state.L_padded / ell);
  kernels::dot_rows(fp.field, state.cells, width, query, 1, answers);
  return answers;
}

std::vector<Fe> decode_read(std::span<const Fe> answers, const BasicParams& params,
                            const FieldParams& fp) {
  check_params(params, fp);
  if (static_cast<int>(answers.size()) != params.N) {
    throw DomainError("basic decode needs one answer per database");
  }
  std::span<const Fe> fs(fp.fs.data(), params.ell);
  auto solution = solve_decode(
      fp.field, decode_system(fp.field, fs, fp.alphas, answers, params.T1 + params.T2));
  solution.resize(params.ell);
  return solution;
}

WriteUpdate build_write_update(std::span<const Fe> deltas, const BasicParams& params,
                               const FieldParams& fp, Rng& rng, NoiseMode mode) {
  check_params(params, fp);
  const int ell = params.ell;
  if (deltas.size() % ell != 0) throw DomainError("deltas not a whole number of subpackets");
  const std::size_t P = deltas.size() / ell;
  const Field& field = fp.field;
  std::span<const Fe> fs(fp.fs.data(), ell);
  // Z^{[s]}_k, shared by every database.
  std::vector<Fe> noise(P * params.T3, Fe{0});
  if (mode == NoiseMode::kFresh) {
    for (auto& z : noise) z = rng.uniform(field);
  }
  WriteUpdate update;
  update.per_db.resize(params.N);
  for (int n = 0; n < params.N; ++n) {
    if (params.in_f_set(n)) continue;
    std::vector<Fe> u(P);
    for (std::size_t s = 0; s < P; ++s) {
      u[s] = combine_update(field, deltas.subspan(s * ell, ell), fs, fp.alphas[n],
                            std::span<const Fe>(noise).subspan(s * params.T3, params.T3));
    }
    update.per_db[n] = std::move(u);
  }
  return update;
}

Fe null_shaper(const BasicParams& params, const FieldParams& fp, int n, int k) {
  const Field& field = fp.field;
  Fe num{1}, den{1};
  for (int r : params.f_set) {
    num = field.mul(num, field.sub(fp.alphas[r], fp.alphas[n]));
    den = field.mul(den, field.sub(fp.alphas[r], fp.fs[k]));
  }
  return field.div(num, den);
}

void apply_write(DatabaseState& state, std::span<const Fe> query,
                 std::span<const Fe> updates, const BasicParams& params,
                 const FieldParams& fp) {
  const int ell = variant_of(state).ell;
  if (ell != params.ell) throw DomainError("storage ell does not match params");
  const int M = state.M;
  if (query.size() != static_cast<std::size_t>(ell) * M) {
    throw DomainError("query shape mismatch");
  }
  const std::size_t P = state.L_padded / ell;
  if (updates.size() != P) throw DomainError("one update per subpacket expected");
  const Field& field = fp.field;
  const int n = state.n;
  // Row (s, k) gets coefficient (f_k − α_n)·Ω_{n,k}·U_n(s).
  std::vector<Fe> scale(ell);
  for (int k = 0; k < ell; ++k) {
    scale[k] = field.mul(field.sub(fp.fs[k], fp.alphas[n]), null_shaper(params, fp, n, k));
  }
  std::vector<Fe> coeffs(P * ell);
  for (std::size_t s = 0; s < P; ++s) {
    for (int k = 0; k < ell; ++k) coeffs[s * ell + k] = field.mul(scale[k], updates[s]);
  }
  kernels::axpy_rows(field, state.cells, M, coeffs, query, ell);
}

void write_round(std::span<const Fe> deltas, const BasicParams& params,
                 const FieldParams& fp, const ReadQuery& query,
                 std::vector<DatabaseState>& states, Rng& rng, NoiseMode mode) {
  WriteUpdate update = build_write_update(deltas, params, fp, rng, mode);
  for (auto& state : states) {
    const auto& payload = update.per_db[state.n];
    if (!payload) continue;
    apply_write(state, query.per_db[state.n], *payload, params, fp);
  }
}

Costs costs_basic(int N) {
  if (N < 4) throw ConfigError("basic scheme needs N >= 4");
  const Rational n(N);
  if (N % 2 == 0) {
    Rational c = Rational(2) / (1 - Rational(2) / n);
    return Costs{c, c};
  }
  return Costs{Rational(2) / (1 - Rational(3) / n),
               (2 - Rational(2) / n) / (1 - Rational(3) / n)};
}

Costs costs_for(const BasicParams& params) {
  return Costs{Rational(params.N, params.ell),
               Rational(params.N - static_cast<int>(params.f_set.size()), params.ell)};
}

}  // namespace pruw::basic
