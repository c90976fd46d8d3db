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

#include "pruw/harness.hpp"

namespace pruw {

// Flat "key = value" text; '#' starts a comment. Keys:
//   scheme N M L P q position_q seed iterations thetas T1 T2 T3 case r
//   r_prime D_r D_w D permutation downlink sparse_set disable_noise
// List values are comma separated, optionally in braces. D sets both
// distortion budgets. Unknown keys and malformed lines throw ConfigError.
ExperimentConfig parse_config(const std::string& text);
ExperimentConfig load_config(const std::string& path);

// Same format, but scalar keys may hold a comma list or an integer range
// "a..b"; the result is the cartesian product in key order of first
// appearance. A key with an empty list yields no configs.
std::vector<ExperimentConfig> parse_sweep(const std::string& text);
std::vector<ExperimentConfig> load_sweep(const std::string& path);

std::string read_file(const std::string& path);

}  // namespace pruw
