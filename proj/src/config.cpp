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

#include "pruw/config.hpp"

#include <charconv>
#include <fstream>
#include <set>
#include <sstream>
#include <utility>

namespace pruw {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

template <typename T>
T parse_number(const std::string& key, const std::string& text) {
  T value{};
  const std::string t = trim(text);
  auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), value);
  if (ec != std::errc() || ptr != t.data() + t.size() || t.empty()) {
    throw ConfigError("bad value '" + text + "' for key " + key);
  }
  return value;
}

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream in(text);
  while (std::getline(in, cur, sep)) out.push_back(trim(cur));
  return out;
}

std::vector<int> parse_int_list(const std::string& key, std::string text) {
  text = trim(text);
  if (!text.empty() && text.front() == '{') {
    if (text.back() != '}') throw ConfigError("unbalanced braces for key " + key);
    text = text.substr(1, text.size() - 2);
  }
  std::vector<int> out;
  if (trim(text).empty()) return out;
  for (const auto& item : split(text, ',')) out.push_back(parse_number<int>(key, item));
  return out;
}

bool parse_bool(const std::string& key, const std::string& text) {
  const std::string t = trim(text);
  if (t == "1" || t == "true" || t == "yes") return true;
  if (t == "0" || t == "false" || t == "no") return false;
  throw ConfigError("bad boolean '" + text + "' for key " + key);
}

Rational parse_budget(const std::string& key, const std::string& text) {
  try {
    return parse_rational(trim(text));
  } catch (const std::exception&) {
    throw ConfigError("bad rational '" + text + "' for key " + key);
  }
}

void apply(ExperimentConfig& cfg, const std::string& key, const std::string& value) {
  if (key == "scheme") cfg.scheme = parse_scheme(trim(value));
  else if (key == "N") cfg.N = parse_number<int>(key, value);
  else if (key == "M") cfg.M = parse_number<int>(key, value);
  else if (key == "L") cfg.L = parse_number<std::size_t>(key, value);
  else if (key == "P") cfg.P = parse_number<int>(key, value);
  else if (key == "q") cfg.q = parse_number<std::uint64_t>(key, value);
  else if (key == "position_q") cfg.position_q = parse_number<std::uint64_t>(key, value);
  else if (key == "seed") cfg.seed = parse_number<std::uint64_t>(key, value);
  else if (key == "iterations") cfg.iterations = parse_number<int>(key, value);
  else if (key == "thetas") cfg.thetas = parse_int_list(key, value);
  else if (key == "T1") cfg.T1 = parse_number<int>(key, value);
  else if (key == "T2") cfg.T2 = parse_number<int>(key, value);
  else if (key == "T3") cfg.T3 = parse_number<int>(key, value);
  else if (key == "case") cfg.case_id = parse_number<int>(key, value);
  else if (key == "r") cfg.r = parse_budget(key, value);
  else if (key == "r_prime") cfg.r_prime = parse_budget(key, value);
  else if (key == "D_r") cfg.D_r = parse_budget(key, value);
  else if (key == "D_w") cfg.D_w = parse_budget(key, value);
  else if (key == "D") cfg.D_r = cfg.D_w = parse_budget(key, value);
  else if (key == "permutation") cfg.permutation = parse_int_list(key, value);
  else if (key == "downlink") cfg.downlink = parse_int_list(key, value);
  else if (key == "sparse_set") cfg.sparse_set = parse_int_list(key, value);
  else if (key == "disable_noise") cfg.disable_noise = parse_bool(key, value);
  else throw ConfigError("unknown config key '" + key + "'");
}

std::vector<std::pair<std::string, std::string>> parse_lines(const std::string& text) {
  std::vector<std::pair<std::string, std::string>> out;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw ConfigError("line " + std::to_string(lineno) + ": expected key=value");
    }
    std::string key = trim(line.substr(0, eq));
    if (key.empty()) throw ConfigError("line " + std::to_string(lineno) + ": empty key");
    out.emplace_back(std::move(key), trim(line.substr(eq + 1)));
  }
  return out;
}

const std::set<std::string> kListKeys{"thetas", "permutation", "downlink", "sparse_set"};

// Values of one sweep key: comma list, or integer range a..b.
std::vector<std::string> expand(const std::string& key, const std::string& value) {
  if (kListKeys.count(key)) return {value};
  if (auto dots = value.find(".."); dots != std::string::npos) {
    const auto lo = parse_number<long long>(key, value.substr(0, dots));
    const auto hi = parse_number<long long>(key, value.substr(dots + 2));
    std::vector<std::string> out;
    for (long long x = lo; x <= hi; ++x) out.push_back(std::to_string(x));
    return out;
  }
  if (value.empty()) return {};
  return split(value, ',');
}

}  // namespace

ExperimentConfig parse_config(const std::string& text) {
  ExperimentConfig cfg;
  for (const auto& [key, value] : parse_lines(text)) apply(cfg, key, value);
  return cfg;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot read " + path);
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

ExperimentConfig load_config(const std::string& path) { return parse_config(read_file(path)); }

std::vector<ExperimentConfig> parse_sweep(const std::string& text) {
  const auto lines = parse_lines(text);
  if (lines.empty()) return {};
  std::vector<std::pair<std::string, std::vector<std::string>>> axes;
  for (const auto& [key, value] : lines) axes.emplace_back(key, expand(key, value));
  std::vector<ExperimentConfig> out{ExperimentConfig{}};
  for (const auto& [key, values] : axes) {
    std::vector<ExperimentConfig> next;
    for (const auto& base : out) {
      for (const auto& v : values) {
        ExperimentConfig cfg = base;
        apply(cfg, key, v);
        next.push_back(std::move(cfg));
      }
    }
    out = std::move(next);
  }
  return out;
}

std::vector<ExperimentConfig> load_sweep(const std::string& path) {
  return parse_sweep(read_file(path));
}

}  // namespace pruw
