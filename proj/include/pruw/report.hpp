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

#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "pruw/audit.hpp"
#include "pruw/harness.hpp"

namespace pruw {

// {"exact": "5/4", "value": 1.25}; exact is null when irrational.
nlohmann::json rational_json(const std::optional<Rational>& exact, double value);

nlohmann::json config_json(const ExperimentConfig& cfg);
nlohmann::json audit_json(const AuditResult& r);
nlohmann::json audits_json(const std::vector<AuditResult>& results);

// {scheme, config, ledger, distortion, audits[], verdict}
nlohmann::json result_json(const ExperimentResult& result,
                           const std::vector<AuditResult>& audits = {});

// scheme,N,knobs,measured_CR,analytic_CR,measured_CW,analytic_CW,match
std::string cost_csv(const std::vector<CostRow>& rows);

}  // namespace pruw
