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

#include "pruw/harness.hpp"

#include <algorithm>
#include <set>

namespace pruw {

const char* scheme_name(SchemeKind kind) {
  switch (kind) {
    case SchemeKind::kBasic: return "basic";
    case SchemeKind::kTopR: return "topr";
    case SchemeKind::kRandom: return "random";
  }
  return "?";
}

SchemeKind parse_scheme(const std::string& name) {
  if (name == "basic") return SchemeKind::kBasic;
  if (name == "topr") return SchemeKind::kTopR;
  if (name == "random") return SchemeKind::kRandom;
  throw ConfigError("unknown scheme '" + name + "' (basic, topr, random)");
}

namespace {

basic::BasicParams basic_params_for(const ExperimentConfig& cfg) {
  if (cfg.N < 4) throw ConfigError("basic scheme needs N >= 4");
  const int T1 = cfg.T1 ? cfg.T1 : (cfg.N + 1) / 2;
  const int T2 = cfg.T2 ? cfg.T2 : 1;
  const int T3 = cfg.T3 ? cfg.T3 : 1;
  return basic::BasicParams::make(cfg.N, T1, T2, T3);
}

void check_indices(const std::vector<int>& xs, int P, const char* what, bool distinct) {
  std::set<int> seen;
  for (int x : xs) {
    if (x < 1 || x > P) {
      throw ConfigError(std::string(what) + " entry " + std::to_string(x) +
                        " outside 1.." + std::to_string(P));
    }
    if (distinct && !seen.insert(x).second) {
      throw ConfigError(std::string(what) + " has duplicate entry " + std::to_string(x));
    }
  }
}

std::size_t f_count_for(const ExperimentConfig& cfg) {
  switch (cfg.scheme) {
    case SchemeKind::kBasic: return basic_params_for(cfg).ell;
    case SchemeKind::kTopR: return topr_variant(cfg.N, cfg.case_id).ell;
    case SchemeKind::kRandom: {
      auto plan = rsparse::optimize_plan(cfg.N, cfg.D_r, cfg.D_w);
      int y = 0;
      for (const auto* phase : {&plan.read, &plan.write}) {
        for (const auto& s : phase->segments) y = std::max(y, s.ell);
      }
      return y;
    }
  }
  return 0;
}

std::vector<int> sorted_union(std::vector<int> xs) {
  std::sort(xs.begin(), xs.end());
  xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
  return xs;
}

}  // namespace

void validate(const ExperimentConfig& cfg) {
  if (cfg.N < 4) throw ConfigError("N must be >= 4");
  if (cfg.M < 1) throw ConfigError("M must be >= 1");
  if (cfg.iterations < 1) throw ConfigError("iterations must be >= 1");
  for (int t : cfg.thetas) {
    if (t < 1 || t > cfg.M) throw ConfigError("theta " + std::to_string(t) + " outside 1..M");
  }
  Field field(cfg.q);  // throws on a non-prime q
  if (cfg.position_alphabet() < 2) throw ConfigError("position_q must be >= 2");
  switch (cfg.scheme) {
    case SchemeKind::kBasic:
      if (cfg.L == 0) throw ConfigError("basic scheme needs L >= 1");
      basic_params_for(cfg);
      break;
    case SchemeKind::kTopR: {
      TopRVariant v = topr_variant(cfg.N, cfg.case_id);
      if (cfg.P < 1) throw ConfigError("top-r needs P >= 1");
      if (cfg.L != 0 && cfg.L != static_cast<std::size_t>(cfg.P) * v.ell) {
        throw ConfigError("top-r L must equal P*ell = " + std::to_string(cfg.P * v.ell));
      }
      topr::sparse_count(cfg.P, cfg.r);
      topr::sparse_count(cfg.P, cfg.r_prime);
      if (!cfg.permutation.empty()) {
        if (static_cast<int>(cfg.permutation.size()) != cfg.P) {
          throw ConfigError("permutation length must equal P");
        }
        check_indices(cfg.permutation, cfg.P, "permutation", true);
      }
      check_indices(cfg.downlink, cfg.P, "downlink", true);
      check_indices(cfg.sparse_set, cfg.P, "sparse_set", true);
      break;
    }
    case SchemeKind::kRandom:
      if (cfg.L == 0) throw ConfigError("random sparsification needs L >= 1");
      rsparse::optimize_plan(cfg.N, cfg.D_r, cfg.D_w);
      break;
  }
  allocate_eval_points(cfg.N, static_cast<int>(f_count_for(cfg)), cfg.q);
}

UpdateSource synthetic_updates(std::uint64_t seed, std::vector<int> sparse_set) {
  return [seed, sparse_set](const Field& field, int iteration, int theta, std::size_t L,
                            int P) {
    SyntheticUpdate upd;
    Rng rng(derive_seed(seed, {0x5eed, std::uint64_t(iteration), std::uint64_t(theta)}));
    upd.deltas.resize(L);
    for (auto& d : upd.deltas) d = rng.nonzero(field);
    if (P > 0) {
      upd.scores.assign(P, Rational(0));
      if (!sparse_set.empty()) {
        for (int s : sparse_set) upd.scores[s - 1] = Rational(1);
      } else {
        for (auto& s : upd.scores) s = Rational(static_cast<std::int64_t>(rng.below(1000)));
      }
    }
    return upd;
  };
}

ModelPlain synthetic_model(const Field& field, int M, std::size_t L, std::uint64_t seed) {
  ModelPlain model = ModelPlain::zeros(M, L);
  Rng rng(seed);
  for (auto& v : model.values) v = rng.nonzero(field);
  return model;
}

SimNetwork::SimNetwork(const ExperimentConfig& cfg) : cfg_(cfg), log_(new FrameLog) {
  validate(cfg_);
  coord_ = CoordinatorSetup::from_master(cfg_.seed);
  fp_ = allocate_eval_points(cfg_.N, static_cast<int>(f_count_for(cfg_)), cfg_.q);
  const Field& field = fp_.field;
  const std::uint64_t model_seed = derive_seed(cfg_.seed, {4});
  switch (cfg_.scheme) {
    case SchemeKind::kBasic: {
      basic_ = basic_params_for(cfg_);
      oracle_ = synthetic_model(field, cfg_.M, cfg_.L, model_seed);
      states_ = init_basic(oracle_, fp_, basic_->T1, basic_->T2, basic_->T3,
                           coord_.storage_seed, mode());
      break;
    }
    case SchemeKind::kTopR: {
      auto params = topr::TopRParams::make(cfg_.N, cfg_.case_id);
      cfg_.L = static_cast<std::size_t>(cfg_.P) * params.ell;
      oracle_ = synthetic_model(field, cfg_.M, cfg_.L, model_seed);
      states_ = init_topr(oracle_, fp_, cfg_.case_id, coord_.storage_seed, mode());
      topr_ = topr::coordinator_setup(cfg_.P, params, fp_, coord_.permutation_seed, mode(),
                                      cfg_.permutation);
      topr::install_reversing(states_, *topr_);
      break;
    }
    case SchemeKind::kRandom: {
      plan_ = rsparse::optimize_plan(cfg_.N, cfg_.D_r, cfg_.D_w);
      rsparse::Layout layout = rsparse::realize_plan(*plan_, cfg_.L);
      regions_ = layout.regions;
      oracle_ = synthetic_model(field, cfg_.M, cfg_.L, model_seed);
      states_ = init_storage(oracle_, fp_, RandomVariant{regions_}, coord_.storage_seed,
                             mode());
      // J sets are fixed for the whole session, like the one-time queries.
      Rng rng(derive_seed(cfg_.seed, {5}));
      jsets_ = rsparse::draw_jsets(regions_, cfg_.N, rng);
      break;
    }
  }
}

void SimNetwork::log_frame(Phase phase, FrameType type, Direction dir, int db, long sub,
                           std::uint64_t symbols, std::vector<int> indices) {
  Frame f;
  f.phase = phase;
  f.type = type;
  f.dir = dir;
  f.session = session_;
  f.db = db;
  f.sub = sub;
  f.symbols = symbols;
  f.indices = std::move(indices);
  log_->append(std::move(f));
}

IterationResult SimNetwork::run_iteration(int theta, const UpdateSource& updates,
                                          std::uint64_t seed) {
  if (theta < 1 || theta > cfg_.M) throw DomainError("theta out of range");
  ++iteration_;
  ++session_;
  IterationResult out;
  out.iteration = iteration_;
  out.session = session_;
  out.theta = theta;
  const std::size_t first_frame = log_->frames().size();
  Rng rng(derive_seed(seed, {std::uint64_t(session_)}));
  SyntheticUpdate upd = updates(fp_.field, iteration_, theta, cfg_.L, cfg_.P);
  if (upd.deltas.size() != cfg_.L) throw DomainError("update source length mismatch");
  try {
    switch (cfg_.scheme) {
      case SchemeKind::kBasic: run_basic(out, upd, rng); break;
      case SchemeKind::kTopR: run_topr(out, upd, rng); break;
      case SchemeKind::kRandom: run_random(out, upd, rng); break;
    }
    check_storage(out);
  } catch (const ProtocolError& e) {
    out.write_ok = false;
    out.failure = std::string("protocol: ") + e.what();
  } catch (const DomainError& e) {
    out.write_ok = false;
    out.failure = std::string("domain: ") + e.what();
  }
  out.ledger.L = cfg_.L;
  const auto& frames = log_->frames();
  for (std::size_t i = first_frame; i < frames.size(); ++i) out.ledger.charge(frames[i]);
  return out;
}

void SimNetwork::check_storage(IterationResult& out) const {
  try {
    ModelPlain now = reconstruct_plain(states_, fp_);
    out.write_ok = now == oracle_;
    if (!out.write_ok && out.failure.empty()) out.failure = "storage differs from oracle";
  } catch (const IntegrityError& e) {
    out.write_ok = false;
    out.failure = std::string("integrity: ") + e.what();
  }
}

void SimNetwork::run_basic(IterationResult& out, const SyntheticUpdate& upd, Rng& rng) {
  const auto& params = *basic_;
  const int N = cfg_.N;
  const int ell = params.ell;
  const std::size_t L_pad = padded_length();
  const std::size_t P = L_pad / ell;
  const Field& field = fp_.field;

  auto query = basic::build_read_query(out.theta, cfg_.M, params, fp_, rng, mode());
  std::vector<std::vector<Fe>> answers(N);
  for (int n = 0; n < N; ++n) {
    log_frame(Phase::kRead, FrameType::kReadQ, Direction::kUserToDb, n, -1,
              query.per_db[n].size());
    answers[n] = basic::answer_read(states_[n], query.per_db[n], fp_);
    log_frame(Phase::kRead, FrameType::kReadA, Direction::kDbToUser, n, -1, answers[n].size());
  }
  out.read_ok = true;
  for (std::size_t s = 0; s < P; ++s) {
    std::vector<Fe> a(N);
    for (int n = 0; n < N; ++n) a[n] = answers[n][s];
    auto bits = basic::decode_read(a, params, fp_);
    for (int k = 0; k < ell; ++k) {
      const std::size_t p = s * ell + k;
      const Fe want = p < cfg_.L ? oracle_.at(out.theta - 1, p) : Fe{0};
      if (!(bits[k] == want)) out.read_ok = false;
    }
  }
  if (!out.read_ok) out.failure = "read decode differs from oracle";

  std::vector<Fe> deltas(L_pad, Fe{0});
  std::copy(upd.deltas.begin(), upd.deltas.end(), deltas.begin());
  auto update = basic::build_write_update(deltas, params, fp_, rng, mode());
  for (int n = 0; n < N; ++n) {
    if (!update.per_db[n]) continue;  // F set: nothing on the wire
    log_frame(Phase::kWrite, FrameType::kWriteU, Direction::kUserToDb, n, -1,
              update.per_db[n]->size());
    basic::apply_write(states_[n], query.per_db[n], *update.per_db[n], params, fp_);
  }
  for (std::size_t p = 0; p < cfg_.L; ++p) {
    Fe& w = oracle_.at(out.theta - 1, p);
    w = field.add(w, upd.deltas[p]);
  }
}

void SimNetwork::run_topr(IterationResult& out, const SyntheticUpdate& upd, Rng& rng) {
  const auto& setup = *topr_;
  const auto& params = setup.params;
  const int N = cfg_.N;
  const int P = cfg_.P;
  const int ell = params.ell;
  const int pos_symbols = topr::position_symbols(cfg_.position_alphabet(), P);
  const Field& field = fp_.field;

  // The user learns P̃ from the coordinator; payload stays off the trace.
  log_frame(Phase::kRead, FrameType::kPermutation, Direction::kCoordToUser, -1, -1,
            static_cast<std::uint64_t>(P) * pos_symbols);
  std::vector<int> downlink;
  if (iteration_ == 1) {
    if (!cfg_.downlink.empty()) {
      downlink = sorted_union(cfg_.downlink);
    } else {
      const int count = topr::sparse_count(P, cfg_.r_prime);
      auto order = topr::random_permutation(P, rng);
      downlink.assign(order.begin(), order.begin() + count);
      downlink = sorted_union(downlink);
    }
  } else {
    downlink = prev_positions_;
  }
  out.downlink = downlink;
  // Database 0 broadcasts Ṽ.
  log_frame(Phase::kRead, FrameType::kDownlinkSet, Direction::kDbToUser, 0, -1,
            downlink.size() * pos_symbols, downlink);

  auto query = topr::build_read_query(out.theta, cfg_.M, params, fp_, rng, mode());
  std::vector<std::vector<Fe>> answers(N);
  for (int n = 0; n < N; ++n) {
    log_frame(Phase::kRead, FrameType::kReadQ, Direction::kUserToDb, n, -1,
              query.per_db[n].size());
    answers[n] = topr::answer_sparse(states_[n], query.per_db[n], downlink, params, fp_);
    log_frame(Phase::kRead, FrameType::kReadA, Direction::kDbToUser, n, -1, answers[n].size());
  }
  out.read_ok = true;
  for (std::size_t i = 0; i < downlink.size(); ++i) {
    std::vector<Fe> a(N);
    for (int n = 0; n < N; ++n) a[n] = answers[n][i];
    const int true_index = setup.perm[downlink[i] - 1];
    out.read_subpackets.push_back(true_index);
    auto bits = topr::decode_subpacket(a, params, fp_);
    for (int k = 0; k < ell; ++k) {
      const std::size_t p = static_cast<std::size_t>(true_index - 1) * ell + k;
      if (!(bits[k] == oracle_.at(out.theta - 1, p))) out.read_ok = false;
    }
  }
  if (!out.read_ok) out.failure = "sparse read differs from oracle";

  if (static_cast<int>(upd.scores.size()) != P) throw DomainError("one score per subpacket");
  auto chosen_idx = topr::select_top(upd.scores, topr::sparse_count(P, cfg_.r));
  out.written_subpackets = chosen_idx;
  std::vector<std::pair<int, std::vector<Fe>>> chosen;
  for (int s : chosen_idx) {
    auto first = upd.deltas.begin() + static_cast<std::ptrdiff_t>(s - 1) * ell;
    chosen.emplace_back(s, std::vector<Fe>(first, first + ell));
  }
  auto write = topr::build_sparse_write(chosen, setup.perm, params, fp_, rng, mode());
  for (int n = 0; n < N; ++n) {
    const auto& payload = write.per_db[n];
    log_frame(Phase::kWrite, FrameType::kWriteU, Direction::kUserToDb, n, -1,
              payload.updates.size());
    log_frame(Phase::kWrite, FrameType::kSparsePos, Direction::kUserToDb, n, -1,
              payload.positions.size() * pos_symbols, payload.positions);
    topr::apply_sparse_write(states_[n], query.per_db[n], payload, params, fp_);
  }
  out.write_positions = write.positions;
  prev_positions_ = sorted_union(write.positions);
  for (int s : chosen_idx) {
    for (int k = 0; k < ell; ++k) {
      const std::size_t p = static_cast<std::size_t>(s - 1) * ell + k;
      Fe& w = oracle_.at(out.theta - 1, p);
      w = field.add(w, upd.deltas[p]);
    }
  }
}

void SimNetwork::run_random(IterationResult& out, const SyntheticUpdate& upd, Rng& rng) {
  const int N = cfg_.N;
  const Field& field = fp_.field;
  const std::size_t L = cfg_.L;
  const int theta = out.theta;
  std::vector<char> read_good(padded_length(), 0), write_good(padded_length(), 0);

  auto rq = rsparse::build_read_query(theta, cfg_.M, regions_, jsets_, fp_, rng, mode());
  out.read_ok = true;
  for (std::size_t ri = 0; ri < regions_.size(); ++ri) {
    const Region& region = regions_[ri];
    const int used = rsparse::read_databases(N, region);
    std::vector<std::vector<Fe>> answers(used);
    for (int n = 0; n < used; ++n) {
      log_frame(Phase::kRead, FrameType::kReadQ, Direction::kUserToDb, n, long(ri),
                rq.per_region[ri][n].size());
      answers[n] = rsparse::answer_read(states_[n], region, rq.per_region[ri][n], fp_);
      log_frame(Phase::kRead, FrameType::kReadA, Direction::kDbToUser, n, long(ri),
                answers[n].size());
    }
    const int patterns = rsparse::read_patterns(region);
    const std::size_t count = region.length / region.ell_r;
    for (std::size_t t = 0; t < count; ++t) {
      const int s = static_cast<int>(t % patterns);
      const auto& J = jsets_[ri].read[s];
      std::vector<Fe> a(used);
      for (int n = 0; n < used; ++n) a[n] = answers[n][t];
      auto bits = rsparse::decode_read(a, region, s, J, fp_);
      for (std::size_t j = 0; j < J.size(); ++j) {
        const std::size_t p = region.offset + t * region.ell_r + (J[j] - 1);
        const Fe want = p < L ? oracle_.at(theta - 1, p) : Fe{0};
        if (!(bits[j] == want)) out.read_ok = false;
        read_good[p] = 1;
      }
    }
  }
  if (!out.read_ok) out.failure = "random read differs from oracle";

  auto wq = rsparse::build_write_query(theta, cfg_.M, regions_, jsets_, fp_, rng, mode());
  std::vector<Fe> deltas(padded_length(), Fe{0});
  std::copy(upd.deltas.begin(), upd.deltas.end(), deltas.begin());
  auto update = rsparse::build_write_update(deltas, regions_, jsets_, fp_, rng, mode());
  for (std::size_t ri = 0; ri < regions_.size(); ++ri) {
    const Region& region = regions_[ri];
    for (int n = 0; n < N; ++n) {
      const auto& payload = update.per_region[ri][n];
      if (!payload) continue;  // excluded database
      log_frame(Phase::kWrite, FrameType::kWriteQGen, Direction::kUserToDb, n, long(ri),
                wq.per_region[ri][n].size());
      log_frame(Phase::kWrite, FrameType::kWriteU, Direction::kUserToDb, n, long(ri),
                payload->size());
      rsparse::apply_write(states_[n], region, wq.per_region[ri][n], *payload, fp_);
    }
    const int patterns = rsparse::write_patterns(region);
    const std::size_t count = region.length / region.ell_w;
    for (std::size_t t = 0; t < count; ++t) {
      for (int j : jsets_[ri].write[t % patterns]) {
        write_good[region.offset + t * region.ell_w + (j - 1)] = 1;
      }
    }
  }
  // Ŵ is zero off J_r and Δ̂ is zero off J_w; count mismatches over L.
  std::int64_t read_bad = 0, write_bad = 0;
  for (std::size_t p = 0; p < L; ++p) {
    Fe& w = oracle_.at(theta - 1, p);
    if (!read_good[p] && w.v != 0) ++read_bad;
    if (write_good[p]) {
      w = field.add(w, upd.deltas[p]);
    } else if (upd.deltas[p].v != 0) {
      ++write_bad;
    }
  }
  const auto len = static_cast<std::int64_t>(L);
  out.distortion = MeasuredDistortion{Rational(read_bad, len), Rational(write_bad, len)};
}

Snapshot SimNetwork::snapshot() const {
  Snapshot snap{fp_, coord_, states_, {}};
  if (topr_) {
    for (int v : topr_->perm) snap.permutation.push_back(static_cast<std::uint32_t>(v));
  }
  return snap;
}

AnalyticCosts analytic_costs(const ExperimentConfig& cfg) {
  AnalyticCosts a;
  switch (cfg.scheme) {
    case SchemeKind::kBasic: {
      auto params = basic_params_for(cfg);
      const bool optimal = params.T1 == (cfg.N + 1) / 2 && params.T2 == 1 && params.T3 == 1;
      auto c = optimal ? basic::costs_basic(cfg.N) : basic::costs_for(params);
      a.read = c.read;
      a.write = c.write;
      a.read_exact = c.read;
      a.write_exact = c.write;
      if (!optimal) a.note = "non-optimal T: N/ell and (N-|F|)/ell";
      break;
    }
    case SchemeKind::kTopR: {
      auto c = topr::costs_topr(cfg.N, cfg.P, cfg.position_alphabet(), cfg.r, cfg.r_prime,
                                cfg.case_id);
      a.read_exact = c.read.exact;
      a.write_exact = c.write.exact;
      if (c.read.exact) a.read = *c.read.exact;
      if (c.write.exact) a.write = *c.write.exact;
      a.read_value = c.read.value;
      a.write_value = c.write.value;
      if (!c.read.exact) a.note = "log_q P not integral; meter charges ceil(log_q P)";
      return a;
    }
    case SchemeKind::kRandom: {
      auto plan = rsparse::optimize_plan(cfg.N, cfg.D_r, cfg.D_w);
      auto c = rsparse::costs_random(cfg.N, plan);
      a.read = c.read_closed;
      a.write = c.write_closed;
      a.read_exact = a.read;
      a.write_exact = a.write;
      if (c.read != c.read_closed || c.write != c.write_closed) {
        a.note = "plan-weighted " + to_string(c.read) + "/" + to_string(c.write) +
                 " differs from the closed form";
      }
      break;
    }
  }
  a.read_value = to_double(a.read);
  a.write_value = to_double(a.write);
  return a;
}

int theta_for(const ExperimentConfig& cfg, int iteration) {
  if (!cfg.thetas.empty()) {
    return cfg.thetas[static_cast<std::size_t>(iteration) % cfg.thetas.size()];
  }
  return iteration % cfg.M + 1;
}

bool ExperimentResult::pass() const {
  if (iterations.empty()) return false;
  for (const auto& it : iterations) {
    if (!it.pass()) return false;
  }
  return true;
}

ExperimentResult run_experiment(const ExperimentConfig& cfg) {
  SimNetwork net(cfg);
  ExperimentResult result;
  result.config = net.config();
  auto updates = synthetic_updates(derive_seed(cfg.seed, {6}), cfg.sparse_set);
  for (int i = 0; i < cfg.iterations; ++i) {
    result.iterations.push_back(
        net.run_iteration(theta_for(cfg, i), updates, derive_seed(cfg.seed, {7})));
  }
  result.analytic = analytic_costs(result.config);
  if (cfg.scheme == SchemeKind::kRandom) {
    result.planned_distortion = rsparse::plan_distortion(cfg.N, *net.plan());
  }
  result.trace = net.log().trace();
  return result;
}

std::string knob_string(const ExperimentConfig& cfg) {
  std::string out;
  auto add = [&](const std::string& key, const std::string& value) {
    if (!out.empty()) out += ';';
    out += key + "=" + value;
  };
  switch (cfg.scheme) {
    case SchemeKind::kBasic: {
      auto params = basic_params_for(cfg);
      add("L", std::to_string(cfg.L));
      add("T1", std::to_string(params.T1));
      add("T2", std::to_string(params.T2));
      add("T3", std::to_string(params.T3));
      break;
    }
    case SchemeKind::kTopR:
      add("case", std::to_string(cfg.case_id));
      add("P", std::to_string(cfg.P));
      add("position_q", std::to_string(cfg.position_alphabet()));
      add("r", to_string(cfg.r));
      add("r_prime", to_string(cfg.r_prime));
      break;
    case SchemeKind::kRandom:
      add("L", std::to_string(cfg.L));
      add("D_r", to_string(cfg.D_r));
      add("D_w", to_string(cfg.D_w));
      break;
  }
  return out;
}

std::vector<CostRow> verify_costs(const std::vector<ExperimentConfig>& sweep) {
  std::vector<CostRow> rows;
  for (ExperimentConfig cfg : sweep) {
    cfg.iterations = 1;
    SimNetwork net(cfg);
    auto it = net.run_iteration(theta_for(cfg, 0), synthetic_updates(cfg.seed, cfg.sparse_set),
                                cfg.seed);
    CostRow row;
    row.scheme = scheme_name(cfg.scheme);
    row.N = cfg.N;
    row.knobs = knob_string(cfg);
    row.measured_read = it.ledger.read_cost();
    row.measured_write = it.ledger.write_cost();
    row.analytic = analytic_costs(net.config());
    row.match = it.pass() && row.analytic.read_exact && row.analytic.write_exact &&
                *row.analytic.read_exact == row.measured_read &&
                *row.analytic.write_exact == row.measured_write;
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace pruw
