// Copyright 2026 The ldl Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "ldl/config.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <sstream>

#include "ldl/dataset.hpp"
#include "ldl/errors.hpp"

namespace ldl {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

template <typename T>
T parse_number(const std::string& key, const std::string& value) {
  T out{};
  auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), out);
  if (ec != std::errc() || ptr != value.data() + value.size()) {
    throw ConfigError("invalid value '" + value + "' for " + key);
  }
  return out;
}

bool parse_bool(const std::string& key, const std::string& value) {
  if (value == "true" || value == "1" || value == "yes") return true;
  if (value == "false" || value == "0" || value == "no") return false;
  throw ConfigError("invalid boolean '" + value + "' for " + key);
}

std::vector<std::string> split_list(const std::string& value) {
  std::vector<std::string> out;
  std::stringstream in(value);
  std::string item;
  while (std::getline(in, item, ',')) {
    item = trim(item);
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

const std::vector<std::string>& config_keys() {
  static const std::vector<std::string> keys = {
      "dataset",   "form_column", "lexeme_column", "feature_columns",
      "embeddings", "grams",      "tokenized",     "separator",
      "boundary",  "dims",        "seed",          "sd",
      "ridge",     "threshold",   "max_length",    "top_k",
      "output",    "pairs",       "write_correlations"};
  return keys;
}

}  // namespace

KeyValues parse_key_values(const std::string& text) {
  KeyValues out;
  std::istringstream in(text);
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto t = trim(line);
    if (t.empty() || t[0] == '#') continue;
    const auto eq = t.find('=');
    if (eq == std::string::npos) {
      throw ConfigError("line " + std::to_string(line_no) +
                        ": expected key = value");
    }
    out.emplace_back(trim(t.substr(0, eq)), trim(t.substr(eq + 1)));
  }
  return out;
}

KeyValues read_key_values(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open '" + path.string() + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  try {
    return parse_key_values(buf.str());
  } catch (const ConfigError& e) {
    throw ConfigError(path.string() + ": " + e.what());
  }
}

bool is_config_key(const std::string& key) {
  const auto& keys = config_keys();
  return std::find(keys.begin(), keys.end(), key) != keys.end();
}

void apply_setting(RunConfig& c, const std::string& key,
                   const std::string& value) {
  if (key == "dataset") c.dataset = value;
  else if (key == "form_column") c.form_column = value;
  else if (key == "lexeme_column") c.lexeme_column = value;
  else if (key == "feature_columns") c.feature_columns = split_list(value);
  else if (key == "embeddings") c.embeddings = value;
  else if (key == "grams") c.grams = parse_number<std::size_t>(key, value);
  else if (key == "tokenized") c.tokenized = parse_bool(key, value);
  else if (key == "separator") c.separator = value;
  else if (key == "boundary") c.boundary = value;
  else if (key == "dims") c.dims = parse_number<long>(key, value);
  else if (key == "seed") c.seed = parse_number<std::uint64_t>(key, value);
  else if (key == "sd") c.sd = parse_number<double>(key, value);
  else if (key == "ridge") c.ridge = parse_number<double>(key, value);
  else if (key == "threshold") c.threshold = parse_number<double>(key, value);
  else if (key == "max_length") c.max_length = parse_number<std::size_t>(key, value);
  else if (key == "top_k") c.top_k = parse_number<std::size_t>(key, value);
  else if (key == "output") c.output = value;
  else if (key == "pairs") c.pairs = value;
  else if (key == "write_correlations") c.write_correlations = parse_bool(key, value);
  else throw ConfigError("unknown configuration key '" + key + "'");
}

void apply_known_settings(RunConfig& config, const KeyValues& values) {
  for (const auto& [k, v] : values) {
    if (is_config_key(k)) apply_setting(config, k, v);
  }
}

KeyValues to_key_values(const RunConfig& c) {
  std::string features;
  for (std::size_t i = 0; i < c.feature_columns.size(); ++i) {
    features += (i ? "," : "") + c.feature_columns[i];
  }
  return {
      {"dataset", c.dataset.string()},
      {"form_column", c.form_column},
      {"lexeme_column", c.lexeme_column},
      {"feature_columns", features},
      {"embeddings", c.embeddings.string()},
      {"grams", std::to_string(c.grams)},
      {"tokenized", c.tokenized ? "true" : "false"},
      {"separator", c.separator},
      {"boundary", c.boundary},
      {"dims", std::to_string(c.dims)},
      {"seed", std::to_string(c.seed)},
      {"sd", format_double(c.sd)},
      {"ridge", format_double(c.ridge)},
      {"threshold", format_double(c.threshold)},
      {"max_length", std::to_string(c.max_length)},
      {"top_k", std::to_string(c.top_k)},
      {"output", c.output.string()},
      {"pairs", c.pairs.string()},
      {"write_correlations", c.write_correlations ? "true" : "false"},
  };
}

void validate(const RunConfig& c) {
  if (c.dataset.empty()) throw ConfigError("no dataset given");
  if (c.form_column.empty()) throw ConfigError("no form column given");
  if (c.simulated() == !c.embeddings.empty()) {
    throw ConfigError(
        "give exactly one semantic source: lexeme_column (simulated) or "
        "embeddings (loaded)");
  }
  if (!c.simulated() && !c.feature_columns.empty()) {
    throw ConfigError("feature_columns require simulated semantics");
  }
  if (c.grams < 1) throw ConfigError("grams must be at least 1");
  if (c.tokenized && c.separator.empty()) {
    throw ConfigError("tokenized forms need a separator");
  }
  if (c.dims < 0) throw ConfigError("dims must be non-negative");
  if (!(c.ridge >= 0.0)) throw ConfigError("ridge must be non-negative");
  if (!(c.threshold > 0.0)) throw ConfigError("threshold must be positive");
  if (!(c.sd > 0.0)) throw ConfigError("sd must be positive");
  if (c.output.empty()) throw ConfigError("no output directory given");
}

}  // namespace ldl
