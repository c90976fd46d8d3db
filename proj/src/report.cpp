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

#include "pruw/report.hpp"

#include <sstream>

namespace pruw {

using nlohmann::json;

json rational_json(const std::optional<Rational>& exact, double value) {
  json j;
  j["exact"] = exact ? json(to_string(*exact)) : json(nullptr);
  j["value"] = exact ? to_double(*exact) : value;
  return j;
}

json config_json(const ExperimentConfig& cfg) {
  json j;
  j["scheme"] = scheme_name(cfg.scheme);
  j["N"] = cfg.N;
  j["M"] = cfg.M;
  j["L"] = cfg.L;
  j["q"] = cfg.q;
  j["seed"] = cfg.seed;
  j["iterations"] = cfg.iterations;
  if (!cfg.thetas.empty()) j["thetas"] = cfg.thetas;
  j["disable_noise"] = cfg.disable_noise;
  switch (cfg.scheme) {
    case SchemeKind::kBasic:
      if (cfg.T1) j["T1"] = cfg.T1;
      if (cfg.T2) j["T2"] = cfg.T2;
      if (cfg.T3) j["T3"] = cfg.T3;
      break;
    case SchemeKind::kTopR:
      j["P"] = cfg.P;
      j["position_q"] = cfg.position_alphabet();
      j["case"] = cfg.case_id;
      j["r"] = to_string(cfg.r);
      j["r_prime"] = to_string(cfg.r_prime);
      if (!cfg.permutation.empty()) j["permutation"] = cfg.permutation;
      if (!cfg.downlink.empty()) j["downlink"] = cfg.downlink;
      if (!cfg.sparse_set.empty()) j["sparse_set"] = cfg.sparse_set;
      break;
    case SchemeKind::kRandom:
      j["D_r"] = to_string(cfg.D_r);
      j["D_w"] = to_string(cfg.D_w);
      break;
  }
  return j;
}

json audit_json(const AuditResult& r) {
  json j{{"name", r.name},         {"observable", r.observable},
         {"hypotheses", r.hypotheses}, {"statistic", r.statistic},
         {"samples", r.samples},   {"value", r.value},
         {"threshold", r.threshold}, {"pass", r.pass}};
  if (r.statistic == "chi2") j["dof"] = r.dof;
  return j;
}

json audits_json(const std::vector<AuditResult>& results) {
  json arr = json::array();
  for (const auto& r : results) arr.push_back(audit_json(r));
  return arr;
}

json result_json(const ExperimentResult& result, const std::vector<AuditResult>& audits) {
  json j;
  j["scheme"] = scheme_name(result.config.scheme);
  j["config"] = config_json(result.config);

  json ledger;
  ledger["L"] = result.config.L;
  json iterations = json::array();
  for (const auto& it : result.iterations) {
    json e;
    e["iteration"] = it.iteration;
    e["theta"] = it.theta;
    e["downloaded"] = it.ledger.downloaded;
    e["uploaded"] = it.ledger.uploaded;
    e["query_symbols"] = it.ledger.query_symbols;
    e["C_R"] = rational_json(it.ledger.read_cost(), 0);
    e["C_W"] = rational_json(it.ledger.write_cost(), 0);
    e["read_ok"] = it.read_ok;
    e["write_ok"] = it.write_ok;
    if (!it.failure.empty()) e["failure"] = it.failure;
    if (result.config.scheme == SchemeKind::kTopR) {
      e["downlink"] = it.downlink;
      e["read_subpackets"] = it.read_subpackets;
      e["written_subpackets"] = it.written_subpackets;
      e["write_positions"] = it.write_positions;
    }
    iterations.push_back(std::move(e));
  }
  ledger["iterations"] = std::move(iterations);
  if (!result.iterations.empty()) {
    const auto& first = result.iterations.front().ledger;
    ledger["C_R"] = rational_json(first.read_cost(), 0);
    ledger["C_W"] = rational_json(first.write_cost(), 0);
  }
  const auto& a = result.analytic;
  ledger["analytic"] = {{"C_R", rational_json(a.read_exact, a.read_value)},
                        {"C_W", rational_json(a.write_exact, a.write_value)}};
  if (!a.note.empty()) ledger["analytic"]["note"] = a.note;
  j["ledger"] = std::move(ledger);

  if (result.config.scheme == SchemeKind::kRandom && !result.iterations.empty()) {
    json d;
    const auto& m = *result.iterations.front().distortion;
    d["D_r"] = rational_json(m.read, 0);
    d["D_w"] = rational_json(m.write, 0);
    if (result.planned_distortion) {
      d["planned_D_r"] = rational_json(result.planned_distortion->read, 0);
      d["planned_D_w"] = rational_json(result.planned_distortion->write, 0);
    }
    d["budget_D_r"] = to_string(result.config.D_r);
    d["budget_D_w"] = to_string(result.config.D_w);
    j["distortion"] = std::move(d);
  } else {
    j["distortion"] = nullptr;
  }
  j["audits"] = audits_json(audits);
  bool pass = result.pass();
  for (const auto& r : audits) pass = pass && r.pass;
  j["verdict"] = pass ? "pass" : "fail";
  return j;
}

std::string cost_csv(const std::vector<CostRow>& rows) {
  std::ostringstream out;
  out << "scheme,N,knobs,measured_CR,analytic_CR,measured_CW,analytic_CW,match\n";
  auto analytic = [](const std::optional<Rational>& exact, double value) {
    if (exact) return to_string(*exact);
    std::ostringstream s;
    s.precision(12);
    s << value;
    return s.str();
  };
  for (const auto& r : rows) {
    out << r.scheme << ',' << r.N << ',' << r.knobs << ',' << to_string(r.measured_read)
        << ',' << analytic(r.analytic.read_exact, r.analytic.read_value) << ','
        << to_string(r.measured_write) << ','
        << analytic(r.analytic.write_exact, r.analytic.write_value) << ','
        << (r.match ? "true" : "false") << '\n';
  }
  return out.str();
}

}  // namespace pruw
