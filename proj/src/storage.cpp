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

#include "pruw/storage.hpp"

#include <map>
#include <numeric>
#include <string>

namespace pruw {

ModelPlain ModelPlain::zeros(int M, std::size_t L) {
  return ModelPlain{M, L, std::vector<Fe>(static_cast<std::size_t>(M) * L)};
}

ModelPlain ModelPlain::random(const Field& field, int M, std::size_t L,
                              std::uint64_t seed) {
  ModelPlain model = zeros(M, L);
  Rng rng(derive_seed(seed, {0x4d4f44454cULL}));
  for (auto& v : model.values) v = rng.uniform(field);
  return model;
}

std::size_t g_index(std::size_t x, std::size_t y) {
  std::size_t r = x % y;
  return r == 0 ? y : r;
}

std::uint64_t variant_tag(const Variant& v) {
  return static_cast<std::uint64_t>(v.index()) + 1;
}

int random_case(int ell_r, int ell_w) { return ell_w > ell_r ? 1 : 2; }

bool random_case_admissible(int case_id, int ell_r, int ell_w) {
  if (case_id == 1) return ell_w >= ell_r;
  if (case_id == 2) return ell_r >= ell_w;
  return false;
}

int random_noise_terms(int N, int case_id) {
  return case_id == 1 ? N / 2 : (N + 1) / 2;
}

BasicVariant basic_variant(int N, int T1, int T2, int T3) {
  if (T1 < 1 || T2 < 1 || T3 < 1) throw ConfigError("T1, T2, T3 must be >= 1");
  if (2 * T1 < N + T3 - 1) {
    throw ConfigError("T1=" + std::to_string(T1) + " below (N+T3-1)/2");
  }
  if (T1 > N - T2 - 1) {
    throw ConfigError("T1=" + std::to_string(T1) + " above N-T2-1");
  }
  return BasicVariant{T1, T2, T3, N - T1 - T2};
}

TopRVariant topr_variant(int N, int case_id) {
  if (case_id == 1) {
    if (N < 6 || (N - 2) % 4 != 0) {
      throw ConfigError("top-r case 1 needs N = 4*ell + 2 with ell >= 1, got N=" +
                        std::to_string(N));
    }
    int ell = (N - 2) / 4;
    return TopRVariant{1, ell, 2 * ell};
  }
  if (case_id == 2) {
    if (N < 6 || (N - 4) % 2 != 0) {
      throw ConfigError("top-r case 2 needs N = 2*ell + 4 with ell >= 1, got N=" +
                        std::to_string(N));
    }
    int ell = (N - 4) / 2;
    return TopRVariant{2, ell, ell + 1};
  }
  throw ConfigError("top-r case must be 1 or 2");
}

std::size_t padded_length(const Variant& variant, std::size_t L) {
  if (const auto* b = std::get_if<BasicVariant>(&variant)) {
    return (L + b->ell - 1) / b->ell * b->ell;
  }
  if (const auto* t = std::get_if<TopRVariant>(&variant)) {
    return (L + t->ell - 1) / t->ell * t->ell;
  }
  std::size_t total = 0;
  for (const Region& r : std::get<RandomVariant>(variant).regions) total += r.length;
  if (total < L) throw ConfigError("random-sparse regions shorter than the model");
  return total;
}

std::size_t required_fs(const Variant& variant) {
  if (const auto* b = std::get_if<BasicVariant>(&variant)) return b->ell;
  if (const auto* t = std::get_if<TopRVariant>(&variant)) return t->ell;
  std::size_t y = 0;
  for (const Region& r : std::get<RandomVariant>(variant).regions) {
    y = std::max<std::size_t>(y, r.y);
  }
  return y;
}

StorageLayout make_layout(const Variant& variant, std::size_t L_padded) {
  StorageLayout layout;
  layout.f_index.resize(L_padded);
  layout.noise_terms.resize(L_padded);
  if (const auto* b = std::get_if<BasicVariant>(&variant)) {
    for (std::size_t p = 0; p < L_padded; ++p) {
      layout.f_index[p] = p % b->ell;
      layout.noise_terms[p] = b->T1;
    }
  } else if (const auto* t = std::get_if<TopRVariant>(&variant)) {
    for (std::size_t p = 0; p < L_padded; ++p) {
      layout.f_index[p] = p % t->ell;
      layout.noise_terms[p] = t->x + 1;
    }
  } else {
    layout.form = CellForm::kInverse;
    for (const Region& r : std::get<RandomVariant>(variant).regions) {
      for (std::size_t x = 0; x < r.length; ++x) {
        layout.f_index[r.offset + x] = g_index(x + 1, r.y) - 1;
        layout.noise_terms[r.offset + x] = r.noise_terms;
      }
    }
  }
  return layout;
}

CoordinatorSetup CoordinatorSetup::from_master(std::uint64_t master_seed) {
  return CoordinatorSetup{master_seed, derive_seed(master_seed, {1}),
                          derive_seed(master_seed, {2}),
                          derive_seed(master_seed, {3})};
}

namespace {

void check_regions(const RandomVariant& v, int N) {
  std::size_t next = 0;
  for (const Region& r : v.regions) {
    if (r.offset != next) throw ConfigError("random-sparse regions not contiguous");
    if (r.ell_r < 1 || r.ell_w < 1) throw ConfigError("subpacketization must be >= 1");
    int lcm = std::lcm(r.ell_r, r.ell_w);
    if (r.length % lcm != 0) {
      throw ConfigError("region length not a multiple of lcm(ell_r, ell_w)");
    }
    if (r.y != std::max(r.ell_r, r.ell_w)) throw ConfigError("region y mismatch");
    if (!random_case_admissible(r.case_id, r.ell_r, r.ell_w)) {
      throw ConfigError("case " + std::to_string(r.case_id) +
                        " does not match ell_r=" + std::to_string(r.ell_r) +
                        ", ell_w=" + std::to_string(r.ell_w));
    }
    if (r.noise_terms != random_noise_terms(N, r.case_id)) {
      throw ConfigError("region noise degree mismatch");
    }
    int correct = N / 2 - 1;
    if (r.ell_r < correct || r.ell_w < correct) {
      throw ConfigError("subpacketization below floor(N/2)-1");
    }
    next += r.length;
  }
}

}  // namespace

std::vector<DatabaseState> init_storage(const ModelPlain& model,
                                        const FieldParams& params,
                                        const Variant& variant,
                                        std::uint64_t seed, NoiseMode mode) {
  const int N = params.N();
  if (const auto* rv = std::get_if<RandomVariant>(&variant)) check_regions(*rv, N);
  if (params.fs.size() < required_fs(variant)) {
    throw ConfigError("field params provide " + std::to_string(params.fs.size()) +
                      " f values, storage needs " +
                      std::to_string(required_fs(variant)));
  }
  if (model.M < 1) throw ConfigError("need at least one submodel");
  const std::size_t L_padded = padded_length(variant, model.L);
  auto layout = std::make_shared<StorageLayout>(make_layout(variant, L_padded));
  const int M = model.M;
  const Field& field = params.field;

  std::vector<DatabaseState> states(N);
  for (int n = 0; n < N; ++n) {
    states[n].n = n;
    states[n].variant = variant;
    states[n].M = M;
    states[n].L = model.L;
    states[n].L_padded = L_padded;
    states[n].layout = layout;
    states[n].cells.assign(L_padded * M, Fe{0});
  }
  const std::uint64_t tag = variant_tag(variant);
  const auto rows = static_cast<std::int64_t>(L_padded);
#pragma omp parallel for schedule(static)
  for (std::int64_t p = 0; p < rows; ++p) {
    const Fe f = params.fs[layout->f_index[p]];
    const int terms = layout->noise_terms[p];
    std::vector<Fe> z(terms);
    for (int m = 0; m < M; ++m) {
      Fe w = static_cast<std::size_t>(p) < model.L ? model.at(m, p) : Fe{0};
      Rng rng(derive_seed(seed, {tag, std::uint64_t(m), std::uint64_t(p)}));
      for (auto& zi : z) zi = mode == NoiseMode::kZero ? Fe{0} : rng.uniform(field);
      for (int n = 0; n < N; ++n) {
        const Fe alpha = params.alphas[n];
        Fe noise{0};
        for (int i = terms - 1; i >= 0; --i) {
          noise = field.add(field.mul(noise, alpha), z[i]);
        }
        const Fe gap = field.sub(f, alpha);
        states[n].cell(p, m) =
            layout->form == CellForm::kScaled
                ? field.add(w, field.mul(gap, noise))
                : field.add(field.div(w, gap), noise);
      }
    }
  }
  return states;
}

std::vector<DatabaseState> init_basic(const ModelPlain& model,
                                      const FieldParams& params, int T1, int T2,
                                      int T3, std::uint64_t seed, NoiseMode mode) {
  return init_storage(model, params, basic_variant(params.N(), T1, T2, T3), seed,
                      mode);
}

std::vector<DatabaseState> init_topr(const ModelPlain& model,
                                     const FieldParams& params, int case_id,
                                     std::uint64_t seed, NoiseMode mode) {
  return init_storage(model, params, topr_variant(params.N(), case_id), seed, mode);
}

std::vector<DatabaseState> init_random_sparse(const ModelPlain& model,
                                              const FieldParams& params,
                                              int case_id, int ell_r, int ell_w,
                                              std::uint64_t seed, NoiseMode mode) {
  if (!random_case_admissible(case_id, ell_r, ell_w)) {
    throw ConfigError(case_id == 1 ? "case 1 requires ell_w >= ell_r"
                                   : "case 2 requires ell_r >= ell_w");
  }
  const std::size_t lcm = std::lcm(ell_r, ell_w);
  Region region{0, (model.L + lcm - 1) / lcm * lcm, ell_r, ell_w,
                std::max(ell_r, ell_w), case_id,
                random_noise_terms(params.N(), case_id)};
  return init_storage(model, params, RandomVariant{{region}}, seed, mode);
}

ModelPlain reconstruct_plain(std::span<const DatabaseState> states,
                             const FieldParams& params) {
  if (states.empty()) throw IntegrityError("no database states");
  const int N = static_cast<int>(states.size());
  if (N != params.N()) throw IntegrityError("state count does not match alphas");
  const DatabaseState& first = states[0];
  for (const auto& s : states) {
    if (s.M != first.M || s.L_padded != first.L_padded ||
        s.cells.size() != first.cells.size() || !(s.variant == first.variant)) {
      throw IntegrityError("database states disagree on shape or variant");
    }
  }
  const Field& field = params.field;
  const StorageLayout& layout = *first.layout;
  const int M = first.M;

  // Lagrange weights over the first `fit` alphas for evaluating at x.
  auto weights_at = [&](int fit, Fe x) {
    std::vector<Fe> w(fit);
    for (int i = 0; i < fit; ++i) {
      Fe num{1}, den{1};
      for (int k = 0; k < fit; ++k) {
        if (k == i) continue;
        num = field.mul(num, field.sub(x, params.alphas[k]));
        den = field.mul(den, field.sub(params.alphas[i], params.alphas[k]));
      }
      w[i] = field.div(num, den);
    }
    return w;
  };
  struct Plan {
    std::vector<Fe> at_f;
    std::vector<std::vector<Fe>> at_check;
  };
  std::map<std::pair<std::uint32_t, std::uint32_t>, Plan> plans;
  for (std::size_t p = 0; p < layout.positions(); ++p) {
    auto key = std::make_pair(layout.f_index[p], layout.noise_terms[p]);
    if (plans.count(key)) continue;
    const int fit = static_cast<int>(key.second) + 1;
    if (fit > N) throw IntegrityError("too few databases to reconstruct");
    Plan plan;
    plan.at_f = weights_at(fit, params.fs[key.first]);
    for (int j = fit; j < N; ++j) plan.at_check.push_back(weights_at(fit, params.alphas[j]));
    plans.emplace(key, std::move(plan));
  }

  ModelPlain model = ModelPlain::zeros(M, first.L);
  bool consistent = true;
  const auto rows = static_cast<std::int64_t>(layout.positions());
#pragma omp parallel for schedule(static) reduction(&& : consistent)
  for (std::int64_t p = 0; p < rows; ++p) {
    const Plan& plan = plans.at({layout.f_index[p], layout.noise_terms[p]});
    const Fe f = params.fs[layout.f_index[p]];
    const int fit = static_cast<int>(plan.at_f.size());
    std::vector<Fe> y(N);
    for (int m = 0; m < M; ++m) {
      for (int n = 0; n < N; ++n) {
        Fe c = states[n].cell(p, m);
        y[n] = layout.form == CellForm::kScaled
                   ? c
                   : field.mul(c, field.sub(f, params.alphas[n]));
      }
      Fe w{0};
      for (int i = 0; i < fit; ++i) w = field.add(w, field.mul(plan.at_f[i], y[i]));
      for (int j = fit; j < N; ++j) {
        Fe predicted{0};
        const auto& cw = plan.at_check[j - fit];
        for (int i = 0; i < fit; ++i) predicted = field.add(predicted, field.mul(cw[i], y[i]));
        if (!(predicted == y[j])) consistent = false;
      }
      if (static_cast<std::size_t>(p) < first.L) {
        model.at(m, p) = w;
      } else if (w.v != 0) {
        consistent = false;
      }
    }
  }
  if (!consistent) {
    throw IntegrityError("stored cells are inconsistent with the noise degree");
  }
  return model;
}

}  // namespace pruw
