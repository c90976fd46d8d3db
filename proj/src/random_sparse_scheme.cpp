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

#include "pruw/random_sparse_scheme.hpp"

#include <algorithm>
#include <numeric>
#include <set>

#include "pruw/kernels.hpp"
#include "pruw/poly.hpp"

namespace pruw::rsparse {

int correct_bits(int N) { return N / 2 - 1; }

PhasePlan optimize_phase(int N, const Rational& budget) {
  if (N < 4) throw ConfigError("random sparsification needs N >= 4");
  if (budget < 0 || budget >= 1) throw ConfigError("distortion budget must lie in [0, 1)");
  const int h = correct_bits(N);
  PhasePlan plan;
  plan.budget = budget;
  plan.i_star = budget / (1 - budget) * h;
  if (plan.i_star.denominator() == 1) {
    plan.segments.push_back({Rational(1), h + static_cast<int>(plan.i_star.numerator())});
    return plan;
  }
  const int eta = static_cast<int>(ceil_of(plan.i_star));
  const Rational lambda0 = 1 - budget / eta * (h + eta);
  plan.segments.push_back({lambda0, h});
  plan.segments.push_back({1 - lambda0, h + eta});
  return plan;
}

SparsePlan optimize_plan(int N, const Rational& D_r, const Rational& D_w) {
  return SparsePlan{N, optimize_phase(N, D_r), optimize_phase(N, D_w)};
}

int region_case(const SparsePlan& plan, int ell_r, int ell_w) {
  if (ell_r == ell_w) return plan.read.budget < plan.write.budget ? 1 : 2;
  return random_case(ell_r, ell_w);
}

namespace {

// Boundary between the two segments on [0, 1], or 1 for a single segment.
Rational boundary(const PhasePlan& phase) {
  return phase.segments.size() == 1 ? Rational(1) : phase.segments[0].lambda;
}

int ell_at(const PhasePlan& phase, bool second) {
  return second && phase.segments.size() > 1 ? phase.segments[1].ell
                                             : phase.segments[0].ell;
}

std::vector<int> draw_subset(int universe, int size, Rng& rng) {
  std::vector<int> items(universe);
  std::iota(items.begin(), items.end(), 1);
  for (int i = 0; i < size; ++i) {
    std::swap(items[i], items[i + rng.below(static_cast<std::uint64_t>(universe - i))]);
  }
  items.resize(size);
  std::sort(items.begin(), items.end());
  return items;
}

const RandomVariant& variant_of(const DatabaseState& state) {
  const auto* v = std::get_if<RandomVariant>(&state.variant);
  if (!v) throw DomainError("database does not hold random-sparse storage");
  return *v;
}

int answer_noise_terms(int N, const Region& region) {
  return random_noise_terms(N, region.case_id) + 1;
}

}  // namespace

std::vector<Piece> overlap_pieces(const SparsePlan& plan) {
  std::set<Rational> cuts{Rational(0), boundary(plan.read), boundary(plan.write),
                          Rational(1)};
  std::vector<Piece> pieces;
  Rational prev(0);
  for (const Rational& cut : cuts) {
    if (cut == prev) continue;
    const int ell_r = ell_at(plan.read, prev >= boundary(plan.read));
    const int ell_w = ell_at(plan.write, prev >= boundary(plan.write));
    pieces.push_back({cut - prev, ell_r, ell_w, region_case(plan, ell_r, ell_w)});
    prev = cut;
  }
  return pieces;
}

Layout realize_plan(const SparsePlan& plan, std::size_t L) {
  if (L == 0) throw ConfigError("model length must be positive");
  std::size_t grid = 1;
  for (const auto* phase : {&plan.read, &plan.write}) {
    for (const Segment& s : phase->segments) grid = std::lcm(grid, std::size_t(s.ell));
  }
  Layout layout;
  layout.L = L;
  layout.L_padded = (L + grid - 1) / grid * grid;
  const std::size_t units = layout.L_padded / grid;
  auto cut_of = [&](const PhasePlan& phase) {
    return static_cast<std::size_t>(round_nearest(boundary(phase) * std::int64_t(units))) *
           grid;
  };
  const std::size_t cut_r = cut_of(plan.read);
  const std::size_t cut_w = cut_of(plan.write);
  std::set<std::size_t> cuts{0, cut_r, cut_w, layout.L_padded};
  std::size_t prev = 0;
  for (std::size_t cut : cuts) {
    if (cut == prev) continue;
    Region r;
    r.offset = prev;
    r.length = cut - prev;
    r.ell_r = ell_at(plan.read, prev >= cut_r);
    r.ell_w = ell_at(plan.write, prev >= cut_w);
    r.y = std::max(r.ell_r, r.ell_w);
    r.case_id = region_case(plan, r.ell_r, r.ell_w);
    r.noise_terms = random_noise_terms(plan.N, r.case_id);
    layout.regions.push_back(r);
    prev = cut;
  }
  return layout;
}

int read_patterns(const Region& region) {
  return region.case_id == 1 ? std::lcm(region.ell_r, region.ell_w) / region.ell_r : 1;
}

int write_patterns(const Region& region) {
  return region.case_id == 2 ? std::lcm(region.ell_r, region.ell_w) / region.ell_w : 1;
}

int read_databases(int N, const Region& region) {
  return region.case_id == 1 ? 2 * (N / 2) : N;
}

int excluded_database(int N, const Region& region) {
  return region.case_id == 2 && N % 2 == 1 ? N - 1 : -1;
}

std::vector<RegionSets> draw_jsets(std::span<const Region> regions, int N, Rng& rng) {
  const int h = correct_bits(N);
  std::vector<RegionSets> sets;
  for (const Region& r : regions) {
    RegionSets s;
    for (int p = 0; p < read_patterns(r); ++p) s.read.push_back(draw_subset(r.ell_r, h, rng));
    for (int p = 0; p < write_patterns(r); ++p) s.write.push_back(draw_subset(r.ell_w, h, rng));
    sets.push_back(std::move(s));
  }
  return sets;
}

void check_jsets(std::span<const Region> regions, std::span<const RegionSets> sets,
                 int N) {
  if (regions.size() != sets.size()) throw ConfigError("one J-set group per region");
  const int h = correct_bits(N);
  auto check = [&](const std::vector<std::vector<int>>& group, int patterns, int unit) {
    if (static_cast<int>(group.size()) != patterns) {
      throw ConfigError("J-set pattern count mismatch");
    }
    for (const auto& J : group) {
      if (static_cast<int>(J.size()) != h) {
        throw ConfigError("|J| must equal floor(N/2)-1 = " + std::to_string(h));
      }
      std::set<int> distinct(J.begin(), J.end());
      if (distinct.size() != J.size() || *distinct.begin() < 1 ||
          *distinct.rbegin() > unit) {
        throw ConfigError("J-set entries must be distinct and within the subpacket");
      }
    }
  };
  for (std::size_t i = 0; i < regions.size(); ++i) {
    check(sets[i].read, read_patterns(regions[i]), regions[i].ell_r);
    check(sets[i].write, write_patterns(regions[i]), regions[i].ell_w);
  }
}

std::size_t pattern_f_index(const Region& region, int s, int unit, int i) {
  return g_index(static_cast<std::size_t>(s) * unit + i + 1, region.y) - 1;
}

PhaseQuery build_read_query(int theta, int M, std::span<const Region> regions,
                            std::span<const RegionSets> sets, const FieldParams& fp,
                            Rng& rng, NoiseMode mode) {
  if (theta < 1 || theta > M) throw DomainError("theta out of range");
  const int N = fp.N();
  check_jsets(regions, sets, N);
  const Field& field = fp.field;
  PhaseQuery query{theta, M, {}};
  for (std::size_t ri = 0; ri < regions.size(); ++ri) {
    const Region& region = regions[ri];
    const int unit = region.ell_r;
    const int patterns = read_patterns(region);
    const std::size_t width = static_cast<std::size_t>(patterns) * unit * M;
    std::vector<Fe> noise(width, Fe{0});
    if (mode == NoiseMode::kFresh) {
      for (auto& z : noise) z = rng.uniform(field);
    }
    std::vector<std::vector<Fe>> per_db;
    for (int n = 0; n < N; ++n) {
      std::vector<Fe> q(width);
      for (int s = 0; s < patterns; ++s) {
        const auto& J = sets[ri].read[s];
        for (int i = 0; i < unit; ++i) {
          const bool chosen = std::binary_search(J.begin(), J.end(), i + 1);
          const Fe gap = field.sub(fp.fs[pattern_f_index(region, s, unit, i)], fp.alphas[n]);
          for (int m = 0; m < M; ++m) {
            const std::size_t at = (static_cast<std::size_t>(s) * unit + i) * M + m;
            Fe v = field.mul(gap, noise[at]);
            if (chosen && m == theta - 1) v = field.add(v, Fe{1});
            q[at] = v;
          }
        }
      }
      per_db.push_back(std::move(q));
    }
    query.per_region.push_back(std::move(per_db));
  }
  return query;
}

std::vector<Fe> answer_read(const DatabaseState& state, const Region& region,
                            std::span<const Fe> region_query, const FieldParams& fp) {
  variant_of(state);
  const int M = state.M;
  const std::size_t width = static_cast<std::size_t>(region.ell_r) * M;
  const std::size_t patterns = read_patterns(region);
  if (region_query.size() != patterns * width) throw DomainError("read query shape mismatch");
  std::vector<Fe> answers(region.length / region.ell_r);
  std::span<const Fe> cells(state.cells.data() + region.offset * M, region.length * M);
  kernels::dot_rows(fp.field, cells, width, region_query, patterns, answers);
  return answers;
}

std::vector<Fe> decode_read(std::span<const Fe> answers, const Region& region, int s,
                            std::span<const int> J, const FieldParams& fp) {
  const int N = fp.N();
  const int used = read_databases(N, region);
  if (static_cast<int>(answers.size()) != used) {
    throw DomainError("read decode expects " + std::to_string(used) + " answers");
  }
  std::vector<Fe> data_fs;
  for (int j : J) data_fs.push_back(fp.fs[pattern_f_index(region, s, region.ell_r, j - 1)]);
  std::span<const Fe> alphas(fp.alphas.data(), used);
  auto bits = solve_decode(fp.field, decode_system(fp.field, data_fs, alphas, answers,
                                                   answer_noise_terms(N, region)));
  bits.resize(J.size());
  return bits;
}

PhaseQuery build_write_query(int theta, int M, std::span<const Region> regions,
                             std::span<const RegionSets> sets, const FieldParams& fp,
                             Rng& rng, NoiseMode mode) {
  if (theta < 1 || theta > M) throw DomainError("theta out of range");
  const int N = fp.N();
  check_jsets(regions, sets, N);
  const Field& field = fp.field;
  PhaseQuery query{theta, M, {}};
  for (std::size_t ri = 0; ri < regions.size(); ++ri) {
    const Region& region = regions[ri];
    const int unit = region.ell_w;
    const int patterns = write_patterns(region);
    const std::size_t width = static_cast<std::size_t>(patterns) * unit * M;
    std::vector<Fe> noise(width, Fe{0});
    if (mode == NoiseMode::kFresh) {
      for (auto& z : noise) z = rng.uniform(field);
    }
    std::vector<std::vector<Fe>> per_db;
    for (int n = 0; n < N; ++n) {
      std::vector<Fe> q(width);
      for (int s = 0; s < patterns; ++s) {
        const auto& J = sets[ri].write[s];
        for (int i = 0; i < unit; ++i) {
          const bool chosen = std::binary_search(J.begin(), J.end(), i + 1);
          const Fe gap = field.sub(fp.fs[pattern_f_index(region, s, unit, i)], fp.alphas[n]);
          for (int m = 0; m < M; ++m) {
            const std::size_t at = (static_cast<std::size_t>(s) * unit + i) * M + m;
            Fe v = noise[at];
            if (chosen && m == theta - 1) v = field.add(v, field.inv(gap));
            q[at] = v;
          }
        }
      }
      per_db.push_back(std::move(q));
    }
    query.per_region.push_back(std::move(per_db));
  }
  return query;
}

WriteUpdate build_write_update(std::span<const Fe> deltas, std::span<const Region> regions,
                               std::span<const RegionSets> sets, const FieldParams& fp,
                               Rng& rng, NoiseMode mode) {
  const int N = fp.N();
  check_jsets(regions, sets, N);
  const Field& field = fp.field;
  WriteUpdate update;
  for (std::size_t ri = 0; ri < regions.size(); ++ri) {
    const Region& region = regions[ri];
    if (region.offset + region.length > deltas.size()) {
      throw DomainError("deltas shorter than the padded model");
    }
    const int unit = region.ell_w;
    const int patterns = write_patterns(region);
    const std::size_t count = region.length / unit;
    std::vector<Fe> noise(count, Fe{0});
    if (mode == NoiseMode::kFresh) {
      for (auto& z : noise) z = rng.uniform(field);
    }
    // Per write subpacket: Δ on J and the f values those bits are stored at.
    std::vector<std::vector<Fe>> d(count), f(count);
    for (std::size_t t = 0; t < count; ++t) {
      const int s = static_cast<int>(t % patterns);
      for (int j : sets[ri].write[s]) {
        d[t].push_back(deltas[region.offset + t * unit + (j - 1)]);
        f[t].push_back(fp.fs[pattern_f_index(region, s, unit, j - 1)]);
      }
    }
    const int skip = excluded_database(N, region);
    std::vector<std::optional<std::vector<Fe>>> per_db(N);
    for (int n = 0; n < N; ++n) {
      if (n == skip) continue;
      std::vector<Fe> u(count);
      for (std::size_t t = 0; t < count; ++t) {
        u[t] = combine_update(field, d[t], f[t], fp.alphas[n],
                              std::span<const Fe>(&noise[t], 1));
      }
      per_db[n] = std::move(u);
    }
    update.per_region.push_back(std::move(per_db));
  }
  return update;
}

void apply_write(DatabaseState& state, const Region& region,
                 std::span<const Fe> region_query, std::span<const Fe> updates,
                 const FieldParams& fp) {
  variant_of(state);
  const int N = fp.N();
  const int M = state.M;
  const int unit = region.ell_w;
  const int patterns = write_patterns(region);
  const std::size_t count = region.length / unit;
  if (region_query.size() != static_cast<std::size_t>(patterns) * unit * M) {
    throw DomainError("write query shape mismatch");
  }
  if (updates.size() != count) throw DomainError("one update per write subpacket");
  const int skip = excluded_database(N, region);
  if (state.n == skip) throw ProtocolError("excluded database received an update");
  const Field& field = fp.field;
  // Odd-N case 2: (α_r − α_n)/(α_r − f) per row of the pattern.
  std::vector<Fe> shaping(static_cast<std::size_t>(patterns) * unit, Fe{1});
  if (skip >= 0) {
    const Fe alpha_r = fp.alphas[skip];
    for (int s = 0; s < patterns; ++s) {
      for (int i = 0; i < unit; ++i) {
        const Fe f = fp.fs[pattern_f_index(region, s, unit, i)];
        shaping[s * unit + i] = field.div(field.sub(alpha_r, fp.alphas[state.n]),
                                          field.sub(alpha_r, f));
      }
    }
  }
  std::vector<Fe> coeffs(region.length);
  for (std::size_t row = 0; row < region.length; ++row) {
    coeffs[row] = field.mul(updates[row / unit], shaping[row % shaping.size()]);
  }
  std::span<Fe> cells(state.cells.data() + region.offset * M, region.length * M);
  kernels::axpy_rows(field, cells, M, coeffs, region_query, shaping.size());
}

Costs costs_random(int N, const SparsePlan& plan) {
  Costs c;
  for (const Piece& piece : overlap_pieces(plan)) {
    Region r;
    r.case_id = piece.case_id;
    const int writers = N - (excluded_database(N, r) >= 0 ? 1 : 0);
    c.read += piece.fraction * Rational(read_databases(N, r), piece.ell_r);
    c.write += piece.fraction * Rational(writers, piece.ell_w);
  }
  const Rational h(correct_bits(N));
  const Rational keep_r = 1 - plan.read.budget;
  const Rational keep_w = 1 - plan.write.budget;
  if (N % 2 == 0) {
    c.read_closed = Rational(N) / h * keep_r;
    c.write_closed = Rational(N) / h * keep_w;
  } else if (plan.read.budget < plan.write.budget) {
    c.read_closed = Rational(N - 1) / h * keep_r;
    c.write_closed = Rational(N) / h * keep_w;
  } else {
    c.read_closed = Rational(N) / h * keep_r;
    c.write_closed = Rational(N - 1) / h * keep_w;
  }
  return c;
}

DistortionReport plan_distortion(int N, const SparsePlan& plan) {
  const int h = correct_bits(N);
  auto blend = [&](const PhasePlan& phase) {
    Rational d(0);
    for (const Segment& s : phase.segments) d += s.lambda * Rational(s.ell - h, s.ell);
    return d;
  };
  return DistortionReport{blend(plan.read), blend(plan.write)};
}

}  // namespace pruw::rsparse
