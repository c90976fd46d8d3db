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

// Prints one PASS/FAIL line per acceptance criterion; exits 1 on any FAIL.

#include <chrono>
#include <cstdio>
#include <functional>
#include <set>
#include <sstream>
#include <string>

#include "pruw/audit.hpp"
#include "pruw/basic_scheme.hpp"
#include "pruw/harness.hpp"
#include "pruw/poly.hpp"
#include "pruw/report.hpp"
#include "pruw/topr_scheme.hpp"

using namespace pruw;

namespace {

using Clock = std::chrono::steady_clock;

struct Outcome {
  bool pass = true;
  std::string detail;
  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      if (!detail.empty()) detail += "; ";
      detail += what;
    }
  }
};

int failures = 0;

void report(int id, const char* title, double budget_s,
            const std::function<Outcome()>& body) {
  const auto start = Clock::now();
  Outcome out;
  try {
    out = body();
  } catch (const std::exception& e) {
    out.pass = false;
    out.detail = std::string("exception: ") + e.what();
  }
  const double secs = std::chrono::duration<double>(Clock::now() - start).count();
  if (budget_s > 0 && secs >= budget_s) {
    out.require(false, "runtime " + std::to_string(secs) + " s over budget");
  }
  if (!out.pass) ++failures;
  std::printf("criterion %d: %s  %s (%.2f s)%s%s\n", id, out.pass ? "PASS" : "FAIL", title,
              secs, out.detail.empty() ? "" : "  -- ", out.detail.c_str());
  std::fflush(stdout);
}

std::string str(const Rational& x) { return to_string(x); }

Outcome basic_costs() {
  Outcome out;
  const std::pair<int, std::pair<Rational, Rational>> expected[] = {
      {4, {Rational(4), Rational(4)}},
      {5, {Rational(5), Rational(4)}},
      {6, {Rational(3), Rational(3)}},
      {10, {Rational(5, 2), Rational(5, 2)}},
      {11, {Rational(11, 4), Rational(5, 2)}},
  };
  for (const auto& [N, want] : expected) {
    ExperimentConfig cfg;
    cfg.scheme = SchemeKind::kBasic;
    cfg.N = N;
    cfg.M = 2;
    cfg.L = 64;
    cfg.iterations = 2;
    auto res = run_experiment(cfg);
    out.require(res.pass(), "N=" + std::to_string(N) + " round trip failed");
    for (const auto& it : res.iterations) {
      const auto cr = it.ledger.read_cost(), cw = it.ledger.write_cost();
      out.require(cr == want.first && cw == want.second,
                  "N=" + std::to_string(N) + " measured " + str(cr) + "/" + str(cw));
    }
    out.require(res.analytic.read == want.first && res.analytic.write == want.second,
                "N=" + std::to_string(N) + " closed form mismatch");
  }
  return out;
}

ExperimentConfig topr_cfg(int case_id, int P, std::uint64_t q, std::uint64_t position_q) {
  ExperimentConfig cfg;
  cfg.scheme = SchemeKind::kTopR;
  cfg.N = 10;
  cfg.M = 2;
  cfg.P = P;
  cfg.q = q;
  cfg.position_q = position_q;
  cfg.case_id = case_id;
  cfg.r = Rational(1, 5);
  cfg.r_prime = Rational(1, 5);
  cfg.iterations = 2;
  return cfg;
}

Outcome topr_costs() {
  Outcome out;
  // Case 1 formulas with log P = 2: C_R = (4r' + (4/N)(1 + r')·2)/(1 − 2/N),
  // C_W = 4r(1 + 2)/(1 − 2/N).
  const Rational r(1, 5);
  const Rational cr1 = (4 * r + Rational(4, 10) * (1 + r) * 2) / Rational(4, 5);
  const Rational cw1 = 4 * r * 3 / Rational(4, 5);
  const Rational cr2 = (2 * r + Rational(2, 10) * (1 + r) * 2) / Rational(3, 5);
  const Rational cw2 = 2 * r * 3 / Rational(3, 5);
  struct Run {
    ExperimentConfig cfg;
    Rational cr, cw;
    std::string label;
  };
  // F_13 hosts N = 10 directly; P = 169 keeps log P = 2. The rate is
  // 34/169 so that r·P stays whole.
  auto native = topr_cfg(1, 169, 13, 0);
  const Rational r13(34, 169);
  native.r = native.r_prime = r13;
  const Rational cr13 = (4 * r13 + Rational(4, 10) * (1 + r13) * 2) / Rational(4, 5);
  const Rational cw13 = 4 * r13 * 3 / Rational(4, 5);
  const Run runs[] = {
      {topr_cfg(1, 25, kDefaultPrime, 5), cr1, cw1, "case 1, positions over F_5, P=25"},
      {native, cr13, cw13, "case 1, q=13, P=169"},
      {topr_cfg(2, 25, kDefaultPrime, 5), cr2, cw2, "case 2, positions over F_5, P=25"},
  };
  for (const auto& run : runs) {
    auto res = run_experiment(run.cfg);
    out.require(res.pass(), run.label + ": round trip failed");
    for (const auto& it : res.iterations) {
      out.require(it.ledger.read_cost() == run.cr && it.ledger.write_cost() == run.cw,
                  run.label + ": measured " + str(it.ledger.read_cost()) + "/" +
                      str(it.ledger.write_cost()));
    }
    out.require(res.analytic.read_exact == run.cr && res.analytic.write_exact == run.cw,
                run.label + ": closed form mismatch");
  }
  auto c2 = topr::costs_topr(10, 25, 5, r, r, 2);
  out.require(c2.read_stated.exact == (2 * r + Rational(2, 10) * (1 + r) * 2) / Rational(4, 5) &&
                  c2.write_stated.exact == 2 * r * 3 / Rational(4, 5),
              "case 2 stated variant missing");
  return out;
}

Outcome random_line() {
  Outcome out;
  const std::pair<Rational, Rational> line[] = {
      {Rational(0), Rational(5, 2)},
      {Rational(1, 10), Rational(9, 4)},
      {Rational(1, 5), Rational(2)},
  };
  for (const auto& [D, cost] : line) {
    ExperimentConfig cfg;
    cfg.scheme = SchemeKind::kRandom;
    cfg.N = 10;
    cfg.M = 2;
    cfg.L = 200;
    cfg.D_r = D;
    cfg.D_w = D;
    cfg.iterations = 2;
    auto res = run_experiment(cfg);
    const std::string tag = "D=" + str(D);
    out.require(res.pass(), tag + ": round trip failed");
    out.require(res.analytic.read_exact == cost && res.analytic.write_exact == cost,
                tag + ": closed form mismatch");
    for (const auto& it : res.iterations) {
      out.require(it.ledger.read_cost() == cost && it.ledger.write_cost() == cost,
                  tag + ": measured " + str(it.ledger.read_cost()));
      out.require(it.distortion && res.planned_distortion, tag + ": distortion missing");
      if (!it.distortion || !res.planned_distortion) continue;
      out.require(it.distortion->read == res.planned_distortion->read &&
                      it.distortion->write == res.planned_distortion->write,
                  tag + ": measured distortion " + str(it.distortion->read));
      out.require(it.distortion->read <= D && it.distortion->write <= D,
                  tag + ": distortion over budget");
    }
  }
  return out;
}

// Random configurations that fit the field; 100 per scheme and case.
ExperimentConfig draw_instance(SchemeKind scheme, int case_id, std::uint64_t q, Rng& rng) {
  for (;;) {
    ExperimentConfig cfg;
    cfg.scheme = scheme;
    cfg.q = q;
    cfg.M = 2 + static_cast<int>(rng.below(2));
    cfg.seed = rng.next();
    cfg.iterations = 2;
    switch (scheme) {
      case SchemeKind::kBasic:
        cfg.N = 4 + static_cast<int>(rng.below(q == 11 ? 4 : 12));
        cfg.L = 1 + rng.below(40);
        break;
      case SchemeKind::kTopR: {
        cfg.case_id = case_id;
        cfg.N = q == 11 ? 6 : (case_id == 1 ? 6 + 4 * int(rng.below(3)) : 6 + 2 * int(rng.below(5)));
        cfg.P = 2 + static_cast<int>(rng.below(7));
        cfg.r = Rational(1 + static_cast<int>(rng.below(cfg.P)), cfg.P);
        cfg.r_prime = Rational(1 + static_cast<int>(rng.below(cfg.P)), cfg.P);
        break;
      }
      case SchemeKind::kRandom:
        cfg.N = q == 11 ? 4 + static_cast<int>(rng.below(3)) : 4 + static_cast<int>(rng.below(9));
        cfg.L = 10 + rng.below(60);
        cfg.D_r = Rational(static_cast<int>(rng.below(6)), 10);
        cfg.D_w = Rational(static_cast<int>(rng.below(6)), 10);
        break;
    }
    try {
      validate(cfg);
      return cfg;
    } catch (const ConfigError&) {
      // Too many evaluation points for this field; draw again.
    }
  }
}

Outcome round_trips() {
  Outcome out;
  Rng rng(20260101);
  struct Family {
    SchemeKind scheme;
    int case_id;
    const char* name;
  };
  const Family families[] = {{SchemeKind::kBasic, 0, "basic"},
                             {SchemeKind::kTopR, 1, "topr case 1"},
                             {SchemeKind::kTopR, 2, "topr case 2"},
                             {SchemeKind::kRandom, 0, "random"}};
  std::set<int> random_cases;
  for (const auto& fam : families) {
    int mismatches = 0;
    for (int i = 0; i < 100; ++i) {
      const std::uint64_t q = i % 2 == 0 ? 11 : 127;
      auto cfg = draw_instance(fam.scheme, fam.case_id, q, rng);
      SimNetwork net(cfg);
      for (const auto& r : net.regions()) random_cases.insert(r.case_id);
      auto updates = synthetic_updates(rng.next(), {});
      for (int it = 0; it < cfg.iterations; ++it) {
        auto res = net.run_iteration(theta_for(cfg, it), updates, rng.next());
        if (!res.pass()) ++mismatches;
      }
    }
    out.require(mismatches == 0, std::string(fam.name) + ": " + std::to_string(mismatches) +
                                     " mismatching iterations");
  }
  out.require(random_cases.count(1) && random_cases.count(2), "random: a case never occurred");

  // The worked example.
  ExperimentConfig ex;
  ex.scheme = SchemeKind::kTopR;
  ex.N = 10;
  ex.P = 5;
  ex.case_id = 1;
  ex.r = Rational(2, 5);
  ex.r_prime = Rational(2, 5);
  ex.permutation = {2, 5, 1, 3, 4};
  ex.downlink = {2, 3};
  ex.sparse_set = {1, 4};
  auto res = run_experiment(ex);
  const auto& first = res.iterations.front();
  out.require(first.pass(), "worked example: round trip failed");
  out.require(first.read_subpackets == std::vector<int>{5, 1}, "worked example: V != {5,1}");
  out.require(first.write_positions == std::vector<int>{3, 5},
              "worked example: positions != {3,5}");
  return out;
}

std::vector<Fe> distinct_points(const Field& f, int count, Rng& rng) {
  std::set<std::uint64_t> seen;
  std::vector<Fe> pts;
  while (static_cast<int>(pts.size()) < count) {
    const Fe x = rng.uniform(f);
    if (seen.insert(x.v).second) pts.push_back(x);
  }
  return pts;
}

Outcome degree_suites() {
  Outcome out;
  const std::uint64_t primes[] = {11, 127, kDefaultPrime};
  Rng rng(77);
  int decomp_pass = 0, decomp_flip = 0;
  for (int trial = 0; trial < 1000; ++trial) {
    Field f(primes[rng.below(3)]);
    int ell, T3;
    do {
      ell = 1 + static_cast<int>(rng.below(6));
      T3 = 1 + static_cast<int>(rng.below(3));
    } while (2 * ell + T3 + 1 >= static_cast<int>(std::min<std::uint64_t>(f.q(), 1000)));
    const int N = ell + T3 + 1;
    auto pts = distinct_points(f, ell + N, rng);
    std::vector<Fe> fs(pts.begin(), pts.begin() + ell);
    std::vector<Fe> alphas(pts.begin() + ell, pts.end());
    std::vector<Fe> d(ell), z(T3);
    for (auto& v : d) v = rng.uniform(f);
    for (auto& v : z) v = rng.uniform(f);
    std::vector<Fe> u;
    for (Fe a : alphas) u.push_back(combine_update(f, d, fs, a, z));
    const int k = static_cast<int>(rng.below(ell));
    if (decomposition_residual(f, u, k, fs, alphas, d, T3).pass) ++decomp_pass;
    const std::size_t victim = rng.below(u.size());
    u[victim] = f.add(u[victim], rng.nonzero(f));
    if (!decomposition_residual(f, u, k, fs, alphas, d, T3).pass) ++decomp_flip;
  }
  out.require(decomp_pass == 1000 && decomp_flip == 1000,
              "update-decomposition suite " + std::to_string(decomp_pass) + "/" +
                  std::to_string(decomp_flip));

  int shaper_pass = 0, shaper_flip = 0;
  for (int trial = 0; trial < 1000; ++trial) {
    Field f(primes[rng.below(3)]);
    const int fsize = static_cast<int>(rng.below(5));
    const int N = fsize + 3;
    auto pts = distinct_points(f, N + 1, rng);
    const Fe fk = pts.back();
    std::vector<Fe> alphas(pts.begin(), pts.begin() + N);
    std::vector<Fe> F(alphas.begin(), alphas.begin() + fsize);
    auto v = shaper_residual(f, F, fk, alphas);
    if (v.pass) ++shaper_pass;
    // Tamper one evaluated residual value and refit.
    std::vector<Fe> residual;
    for (Fe a : alphas) residual.push_back(poly_eval(f, v.coefficients, a));
    const std::size_t victim = rng.below(residual.size());
    residual[victim] = f.add(residual[victim], rng.nonzero(f));
    if (!fit_degree(f, alphas, residual, fsize - 1).pass) ++shaper_flip;
  }
  out.require(shaper_pass == 1000 && shaper_flip == 1000,
              "null-shaper suite " + std::to_string(shaper_pass) + "/" + std::to_string(shaper_flip));
  return out;
}

Outcome audits() {
  Outcome out;
  AuditOptions opt;
  auto results = run_audit_suite("all", opt);
  int failed = 0;
  for (const auto& r : results) failed += r.pass ? 0 : 1;
  out.require(failed == 0, std::to_string(failed) + " of " + std::to_string(results.size()) +
                               " audits failed");
  opt.disable_noise = true;
  auto control = run_audit_suite("all", opt);
  int passed = 0;
  for (const auto& r : control) passed += r.pass ? 1 : 0;
  out.require(passed == 0, "noise-disabled control passed " + std::to_string(passed) + " audits");
  return out;
}

Outcome f_set() {
  Outcome out;
  Rng rng(4242);
  for (int trial = 0; trial < 20; ++trial) {
    const int N = 5 + 2 * static_cast<int>(rng.below(5));
    const std::uint64_t q = trial % 2 == 0 ? 127 : kDefaultPrime;
    auto params = basic::optimal_params(N);
    auto fp = allocate_eval_points(N, params.ell, q);
    const int M = 2;
    const std::size_t L = params.ell * (1 + rng.below(6));
    ModelPlain model = ModelPlain::random(fp.field, M, L, rng.next());
    auto states = init_basic(model, fp, params.T1, params.T2, params.T3, rng.next());
    const int theta = 1 + static_cast<int>(rng.below(M));
    auto query = basic::build_read_query(theta, M, params, fp, rng);
    std::vector<Fe> deltas(L);
    for (auto& d : deltas) d = rng.nonzero(fp.field);
    auto update = basic::build_write_update(deltas, params, fp, rng);
    out.require(!params.f_set.empty(), "odd N with an empty F set");
    std::vector<std::vector<Fe>> before;
    for (int n : params.f_set) before.push_back(states[n].cells);
    for (int n = 0; n < N; ++n) {
      const bool in_f = params.in_f_set(n);
      out.require(in_f != update.per_db[n].has_value(), "F-set payload mismatch");
      if (update.per_db[n]) basic::apply_write(states[n], query.per_db[n], *update.per_db[n], params, fp);
    }
    for (std::size_t i = 0; i < params.f_set.size(); ++i) {
      out.require(states[params.f_set[i]].cells == before[i], "F-set storage changed");
    }
    for (std::size_t p = 0; p < L; ++p) {
      model.at(theta - 1, p) = fp.field.add(model.at(theta - 1, p), deltas[p]);
    }
    out.require(reconstruct_plain(states, fp) == model,
                "N=" + std::to_string(N) + ": reconstruction misses the update");
  }
  return out;
}

Outcome determinism() {
  Outcome out;
  std::vector<ExperimentConfig> cfgs(3);
  cfgs[0].scheme = SchemeKind::kBasic;
  cfgs[0].N = 7;
  cfgs[0].L = 64;
  cfgs[1].scheme = SchemeKind::kTopR;
  cfgs[1].N = 10;
  cfgs[1].P = 8;
  cfgs[1].r = Rational(1, 4);
  cfgs[1].r_prime = Rational(1, 2);
  cfgs[2].scheme = SchemeKind::kRandom;
  cfgs[2].N = 11;
  cfgs[2].L = 120;
  cfgs[2].D_r = Rational(1, 10);
  cfgs[2].D_w = Rational(1, 5);
  for (auto& cfg : cfgs) {
    cfg.iterations = 3;
    cfg.seed = 31337;
    auto a = run_experiment(cfg);
    auto b = run_experiment(cfg);
    const std::string name = scheme_name(cfg.scheme);
    out.require(result_json(a).dump() == result_json(b).dump(), name + ": JSON differs");
    out.require(a.trace == b.trace && !a.trace.empty(), name + ": trace differs");
  }
  return out;
}

}  // namespace

int main() {
  report(1, "basic-scheme costs for N in {4,5,6,10,11}", 5, basic_costs);
  report(2, "top-r costs, case 1 and case 2", 10, topr_costs);
  report(3, "random-sparsification rate-distortion line", 10, random_line);
  report(4, "randomized round trips against the plain oracle", 0, round_trips);
  report(5, "update-decomposition and null-shaper degree suites", 0, degree_suites);
  report(6, "privacy audits and noise-disabled control", 60, audits);
  report(7, "odd-N F set: no payload, untouched storage, model updated", 0, f_set);
  report(8, "determinism of result JSON and frame traces", 0, determinism);
  return failures == 0 ? 0 : 1;
}
