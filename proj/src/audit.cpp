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

#include "pruw/audit.hpp"

#include <boost/math/distributions/chi_squared.hpp>

#include <cmath>
#include <numbers>

#include "pruw/basic_scheme.hpp"
#include "pruw/field.hpp"
#include "pruw/random_sparse_scheme.hpp"
#include "pruw/topr_scheme.hpp"

namespace pruw {

double tvd(const std::vector<std::uint64_t>& counts_a, std::uint64_t n_a,
           const std::vector<std::uint64_t>& counts_b, std::uint64_t n_b) {
  if (counts_a.size() != counts_b.size()) throw DomainError("histogram supports differ");
  if (n_a == 0 || n_b == 0) throw DomainError("empty sample");
  double sum = 0;
  for (std::size_t i = 0; i < counts_a.size(); ++i) {
    sum += std::abs(double(counts_a[i]) / double(n_a) - double(counts_b[i]) / double(n_b));
  }
  return 0.5 * sum;
}

double expected_null_tvd(std::uint64_t cells, std::uint64_t samples) {
  const double p = 1.0 / double(cells);
  // E|X| = sqrt(2/π)·σ for a centred normal; the difference of two
  // empirical frequencies has variance 2p(1−p)/n.
  const double per_cell =
      std::sqrt(2.0 / std::numbers::pi) * std::sqrt(2.0 * p * (1 - p) / double(samples));
  return 0.5 * double(cells) * per_cell;
}

double chi_square_uniform(const std::vector<std::uint64_t>& counts, std::uint64_t n) {
  const double expected = double(n) / double(counts.size());
  double stat = 0;
  for (auto c : counts) stat += (double(c) - expected) * (double(c) - expected) / expected;
  return stat;
}

double chi_square_critical(int dof, double significance) {
  boost::math::chi_squared dist(dof);
  return boost::math::quantile(boost::math::complement(dist, significance));
}

void require_tvd_power(std::uint64_t cells, std::uint64_t samples, double threshold) {
  const double null = expected_null_tvd(cells, samples);
  if (threshold < 2 * null) {
    throw InconclusiveError("TVD threshold " + std::to_string(threshold) +
                            " is within twice the sampling noise " + std::to_string(null) +
                            " for " + std::to_string(cells) + " cells at " +
                            std::to_string(samples) + " samples");
  }
}

namespace {

constexpr std::uint64_t kSmallQ = 5;

// Samples of the concatenated per-database views; values are residues
// below q. views[i*width + c].
struct SampleSet {
  std::uint64_t n = 0;
  int width = 0;
  std::vector<std::uint8_t> views;
};

using ViewFn = std::function<std::vector<Fe>(int hypothesis, Rng& rng)>;

SampleSet draw(const ViewFn& view, int hypothesis, std::uint64_t n, int width,
               std::uint64_t seed) {
  SampleSet set{n, width, std::vector<std::uint8_t>(n * width)};
  const auto count = static_cast<std::int64_t>(n);
#pragma omp parallel for schedule(static)
  for (std::int64_t i = 0; i < count; ++i) {
    Rng rng(derive_seed(seed, {std::uint64_t(hypothesis), std::uint64_t(i)}));
    auto v = view(hypothesis, rng);
    for (int c = 0; c < width; ++c) set.views[i * width + c] = std::uint8_t(v[c].v);
  }
  return set;
}

std::vector<std::uint64_t> histogram(const SampleSet& set, const std::vector<int>& coords) {
  std::uint64_t cells = 1;
  for (std::size_t i = 0; i < coords.size(); ++i) cells *= kSmallQ;
  std::vector<std::uint64_t> counts(cells, 0);
  for (std::uint64_t i = 0; i < set.n; ++i) {
    std::uint64_t code = 0;
    for (int c : coords) code = code * kSmallQ + set.views[i * set.width + c];
    ++counts[code];
  }
  return counts;
}

struct Projection {
  std::string label;
  std::vector<int> coords;  // within one database's view
  std::string observable;
  bool against_theta = true;  // else against Δ
};

// Singles of the judged kind and every pair with at least one judged
// coordinate.
std::vector<Projection> projections(const std::vector<std::string>& names,
                                    const std::vector<std::string>& kinds,
                                    const std::string& judged, bool against_theta) {
  std::vector<Projection> out;
  const int d = static_cast<int>(names.size());
  for (int i = 0; i < d; ++i) {
    if (kinds[i] == judged) out.push_back({names[i], {i}, kinds[i], against_theta});
  }
  for (int i = 0; i < d; ++i) {
    for (int j = i + 1; j < d; ++j) {
      if (kinds[i] != judged && kinds[j] != judged) continue;
      const std::string obs = kinds[i] == kinds[j] ? kinds[i] : kinds[i] + "+" + kinds[j];
      out.push_back({names[i] + "+" + names[j], {i, j}, obs, against_theta});
    }
  }
  return out;
}

// Hypothesis sets: 0 = (θ=1, Δ=0), 1 = (θ=2, Δ=0), 2 = (θ=1, Δ=1).
std::vector<AuditResult> run_projections(const std::string& scheme, const ViewFn& view,
                                         int N, const std::vector<std::string>& names,
                                         const std::vector<Projection>& projs,
                                         const AuditOptions& opt, std::uint64_t tag) {
  for (const auto& p : projs) {
    std::uint64_t cells = 1;
    for (std::size_t i = 0; i < p.coords.size(); ++i) cells *= kSmallQ;
    require_tvd_power(cells, opt.samples, opt.tvd_threshold);
  }
  const int dims = static_cast<int>(names.size());
  const int width = N * dims;
  const std::uint64_t seed = derive_seed(opt.seed, {tag});
  SampleSet sets[3];
  for (int h = 0; h < 3; ++h) sets[h] = draw(view, h, opt.samples, width, seed);

  std::vector<AuditResult> out;
  for (int n = 0; n < N; ++n) {
    for (const auto& p : projs) {
      std::vector<int> coords;
      for (int c : p.coords) coords.push_back(n * dims + c);
      const SampleSet& other = p.against_theta ? sets[1] : sets[2];
      AuditResult r;
      r.name = scheme + "/db" + std::to_string(n) + (p.against_theta ? "/theta/" : "/delta/") +
               p.label;
      r.observable = p.observable;
      r.hypotheses = p.against_theta ? "theta=1 vs theta=2" : "delta=0 vs delta=1";
      r.statistic = "tvd";
      r.samples = opt.samples;
      r.value = tvd(histogram(sets[0], coords), sets[0].n, histogram(other, coords), other.n);
      r.threshold = opt.tvd_threshold;
      r.pass = r.value < r.threshold;
      out.push_back(std::move(r));
    }
  }
  return out;
}

NoiseMode mode_of(const AuditOptions& opt) {
  return opt.disable_noise ? NoiseMode::kZero : NoiseMode::kFresh;
}

// α = 1..4 and f = 0 fit four databases into F_5.
FieldParams small_points() {
  return make_field_params(kSmallQ, {Fe{1}, Fe{2}, Fe{3}, Fe{4}}, {Fe{0}});
}

}  // namespace

std::vector<AuditResult> audit_basic(const AuditOptions& opt) {
  const FieldParams fp = small_points();
  const auto params = basic::BasicParams::make(4, 2, 1, 1);  // ell = 1, F empty
  const int M = 2, P = 2;
  const NoiseMode mode = mode_of(opt);
  ViewFn view = [&](int h, Rng& rng) {
    const int theta = h == 1 ? 2 : 1;
    const Fe d{h == 2 ? 1u : 0u};
    std::vector<Fe> deltas(P * params.ell, d);
    auto query = basic::build_read_query(theta, M, params, fp, rng, mode);
    auto update = basic::build_write_update(deltas, params, fp, rng, mode);
    std::vector<Fe> v;
    for (int n = 0; n < params.N; ++n) {
      v.insert(v.end(), query.per_db[n].begin(), query.per_db[n].end());
      v.insert(v.end(), update.per_db[n]->begin(), update.per_db[n]->end());
    }
    return v;
  };
  const std::vector<std::string> names{"Q0", "Q1", "U1", "U2"};
  const std::vector<std::string> kinds{"query", "query", "update", "update"};
  auto projs = projections(names, kinds, "query", true);
  auto more = projections(names, kinds, "update", false);
  projs.insert(projs.end(), more.begin(), more.end());
  return run_projections("basic", view, params.N, names, projs, opt, 1);
}

std::vector<AuditResult> audit_topr_positions(const AuditOptions& opt) {
  const int P = 5;
  const std::vector<std::vector<int>> truths{{1, 4}, {2, 3}};
  if (double(opt.samples) / 10.0 < 5.0) {
    throw InconclusiveError("fewer than 5 expected draws per subset");
  }
  // Subset {a,b} with a<b → cell index.
  auto cell_of = [](int a, int b) {
    int idx = 0;
    for (int x = 1; x <= 5; ++x) {
      for (int y = x + 1; y <= 5; ++y) {
        if (x == a && y == b) return idx;
        ++idx;
      }
    }
    return -1;
  };
  const std::uint64_t seed = derive_seed(opt.seed, {2});
  const double critical = chi_square_critical(9, opt.significance);
  std::vector<AuditResult> out;
  for (std::size_t h = 0; h < truths.size(); ++h) {
    std::vector<int> cells(opt.samples);
    const auto count = static_cast<std::int64_t>(opt.samples);
#pragma omp parallel for schedule(static)
    for (std::int64_t i = 0; i < count; ++i) {
      std::vector<int> perm(P);
      if (opt.disable_noise) {
        for (int k = 0; k < P; ++k) perm[k] = k + 1;
      } else {
        Rng rng(derive_seed(seed, {std::uint64_t(h), std::uint64_t(i)}));
        perm = topr::random_permutation(P, rng);
      }
      auto pos = topr::permuted_positions(perm, truths[h]);
      cells[i] = cell_of(pos[0], pos[1]);
    }
    std::vector<std::uint64_t> counts(10, 0);
    for (int c : cells) ++counts[c];
    AuditResult r;
    r.name = "topr/positions/{" + std::to_string(truths[h][0]) + "," +
             std::to_string(truths[h][1]) + "}";
    r.observable = "positions";
    r.hypotheses = "uniform over C(5,2) subsets";
    r.statistic = "chi2";
    r.samples = opt.samples;
    r.value = chi_square_uniform(counts, opt.samples);
    r.threshold = critical;
    r.dof = 9;
    r.pass = r.value < critical;
    out.push_back(std::move(r));
  }
  return out;
}

std::vector<AuditResult> audit_random(const AuditOptions& opt) {
  const FieldParams fp = small_points();
  const int N = 4, M = 2;
  // ell_r = ell_w = 1 = floor(N/2) − 1, equal budgets → case 2.
  const Region region{0, 2, 1, 1, 1, 2, random_noise_terms(N, 2)};
  const std::vector<Region> regions{region};
  const std::vector<rsparse::RegionSets> sets{{{{1}}, {{1}}}};
  const NoiseMode mode = mode_of(opt);
  ViewFn view = [&](int h, Rng& rng) {
    const int theta = h == 1 ? 2 : 1;
    const Fe d{h == 2 ? 1u : 0u};
    std::vector<Fe> deltas(region.length, d);
    auto rq = rsparse::build_read_query(theta, M, regions, sets, fp, rng, mode);
    auto wq = rsparse::build_write_query(theta, M, regions, sets, fp, rng, mode);
    auto up = rsparse::build_write_update(deltas, regions, sets, fp, rng, mode);
    std::vector<Fe> v;
    for (int n = 0; n < N; ++n) {
      const auto& a = rq.per_region[0][n];
      const auto& b = wq.per_region[0][n];
      const auto& u = *up.per_region[0][n];
      v.insert(v.end(), a.begin(), a.end());
      v.insert(v.end(), b.begin(), b.end());
      v.insert(v.end(), u.begin(), u.end());
    }
    return v;
  };
  const std::vector<std::string> names{"R0", "R1", "W0", "W1", "U1", "U2"};
  const std::vector<std::string> kinds{"query", "query", "query", "query", "update", "update"};
  auto projs = projections(names, kinds, "query", true);
  auto more = projections(names, kinds, "update", false);
  projs.insert(projs.end(), more.begin(), more.end());
  return run_projections("random", view, N, names, projs, opt, 3);
}

std::vector<AuditResult> run_audit_suite(const std::string& suite, const AuditOptions& opt) {
  std::vector<AuditResult> out;
  auto append = [&](std::vector<AuditResult> xs) {
    out.insert(out.end(), xs.begin(), xs.end());
  };
  if (suite == "basic" || suite == "all") append(audit_basic(opt));
  if (suite == "topr" || suite == "all") append(audit_topr_positions(opt));
  if (suite == "random" || suite == "all") append(audit_random(opt));
  if (out.empty() && suite != "basic" && suite != "topr" && suite != "random" &&
      suite != "all") {
    throw ConfigError("unknown audit suite '" + suite + "' (basic, topr, random, all)");
  }
  return out;
}

}  // namespace pruw
