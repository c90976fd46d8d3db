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

// Experiment runner: run, cost-table, audit, save-snapshot, load-snapshot.
// Exit codes: 0 pass, 1 fail, 2 config error, 3 inconclusive audit.

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "pruw/audit.hpp"
#include "pruw/config.hpp"
#include "pruw/harness.hpp"
#include "pruw/report.hpp"

namespace {

struct Common {
  std::string config;
  std::string out;
  std::optional<std::uint64_t> seed;
  std::string scheme;
  bool disable_noise = false;
  std::string trace;
};

void emit(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) throw pruw::ConfigError("cannot write " + path);
  f << text;
}

void warn_insecure() {
  std::cerr << "INSECURE: noise disabled; queries and updates reveal the "
               "submodel index and values. Debug use only.\n";
}

pruw::ExperimentConfig resolve(const Common& c) {
  pruw::ExperimentConfig cfg = pruw::load_config(c.config);
  if (c.seed) cfg.seed = *c.seed;
  if (!c.scheme.empty()) cfg.scheme = pruw::parse_scheme(c.scheme);
  if (c.disable_noise) cfg.disable_noise = true;
  if (cfg.disable_noise) warn_insecure();
  return cfg;
}

bool frames_logging() {
  const char* env = std::getenv("PRUW_LOG");
  return env && std::string(env) == "frames";
}

int cmd_run(const Common& c) {
  auto result = pruw::run_experiment(resolve(c));
  emit(c.out, pruw::result_json(result).dump(2) + "\n");
  if (!c.trace.empty()) emit(c.trace, result.trace);
  if (frames_logging()) std::cerr << result.trace;
  return result.pass() ? 0 : 1;
}

int cmd_cost_table(const Common& c) {
  auto sweep = pruw::load_sweep(c.config);
  for (auto& cfg : sweep) {
    if (c.seed) cfg.seed = *c.seed;
    if (!c.scheme.empty()) cfg.scheme = pruw::parse_scheme(c.scheme);
  }
  emit(c.out, pruw::cost_csv(pruw::verify_costs(sweep)));
  return 0;
}

int cmd_audit(const Common& c, const std::string& suite, std::uint64_t samples) {
  pruw::AuditOptions opt;
  opt.samples = samples;
  if (c.seed) opt.seed = *c.seed;
  opt.disable_noise = c.disable_noise;
  if (opt.disable_noise) warn_insecure();
  std::string chosen = suite;
  if (!c.scheme.empty()) chosen = c.scheme;
  auto results = pruw::run_audit_suite(chosen, opt);
  nlohmann::json j;
  j["suite"] = chosen;
  j["disable_noise"] = opt.disable_noise;
  j["audits"] = pruw::audits_json(results);
  bool pass = !results.empty();
  for (const auto& r : results) pass = pass && r.pass;
  j["verdict"] = pass ? "pass" : "fail";
  emit(c.out, j.dump(2) + "\n");
  return pass ? 0 : 1;
}

int cmd_save_snapshot(const Common& c) {
  auto cfg = resolve(c);
  if (c.out.empty()) throw pruw::ConfigError("save-snapshot needs --out");
  pruw::SimNetwork net(cfg);
  auto updates = pruw::synthetic_updates(pruw::derive_seed(cfg.seed, {6}), cfg.sparse_set);
  bool pass = true;
  for (int i = 0; i < cfg.iterations; ++i) {
    pass = net.run_iteration(pruw::theta_for(cfg, i), updates,
                             pruw::derive_seed(cfg.seed, {7}))
               .pass() &&
           pass;
  }
  std::ofstream f(c.out, std::ios::binary);
  if (!f) throw pruw::ConfigError("cannot write " + c.out);
  pruw::write_snapshot(f, net.snapshot());
  return pass ? 0 : 1;
}

int cmd_load_snapshot(const Common& c, const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw pruw::ConfigError("cannot read " + path);
  pruw::Snapshot snap = pruw::read_snapshot(f);
  pruw::ModelPlain model = pruw::reconstruct_plain(snap.states, snap.params);
  nlohmann::json j;
  j["q"] = snap.params.q();
  j["N"] = snap.params.N();
  j["M"] = model.M;
  j["L"] = model.L;
  j["L_padded"] = snap.states.front().L_padded;
  j["variant"] = pruw::variant_tag(snap.states.front().variant);
  j["master_seed"] = snap.coordinator.master_seed;
  j["reconstructed"] = true;
  emit(c.out, j.dump(2) + "\n");
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"PRUW experiment runner"};
  app.require_subcommand(1);
  Common c;
  std::string suite = "all";
  std::uint64_t samples = 100000;
  std::string snapshot_path;

  auto add_common = [&](CLI::App* sub, bool needs_config) {
    auto* opt = sub->add_option("--config", c.config, "Config or sweep file");
    if (needs_config) opt->required();
    sub->add_option("--out", c.out, "Output path, stdout when omitted");
    sub->add_option("--seed", c.seed, "Master seed override");
    sub->add_option("--scheme", c.scheme, "basic, topr or random");
    sub->add_flag("--disable-noise", c.disable_noise, "INSECURE: zero all masks");
  };
  auto* run = app.add_subcommand("run", "Run iterations and emit result JSON");
  add_common(run, true);
  run->add_option("--trace", c.trace, "Write the frame trace here");
  auto* table = app.add_subcommand("cost-table", "Measured vs analytic costs as CSV");
  add_common(table, true);
  auto* audit = app.add_subcommand("audit", "Privacy audit suites");
  add_common(audit, false);
  audit->add_option("--suite", suite, "basic, topr, random or all");
  audit->add_option("--samples", samples, "Samples per hypothesis");
  auto* save = app.add_subcommand("save-snapshot", "Run, then write all database state");
  add_common(save, true);
  auto* load = app.add_subcommand("load-snapshot", "Read a snapshot and reconstruct it");
  add_common(load, false);
  load->add_option("--snapshot", snapshot_path, "Snapshot file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 2;
  }

  try {
    if (*run) return cmd_run(c);
    if (*table) return cmd_cost_table(c);
    if (*audit) return cmd_audit(c, suite, samples);
    if (*save) return cmd_save_snapshot(c);
    if (*load) return cmd_load_snapshot(c, snapshot_path);
  } catch (const pruw::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const pruw::InconclusiveError& e) {
    std::cerr << "inconclusive: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}
