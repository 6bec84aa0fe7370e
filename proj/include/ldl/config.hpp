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

#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <vector>

namespace ldl {

// Every parameter of a run. Files hold flat `key = value` lines; keys match
// the long command-line flags with '-' replaced by '_'.
struct RunConfig {
  std::filesystem::path dataset;
  std::string form_column = "Word";
  std::string lexeme_column;
  std::vector<std::string> feature_columns;
  std::filesystem::path embeddings;
  std::size_t grams = 2;
  bool tokenized = false;
  std::string separator = "_";
  std::string boundary = "#";
  long dims = 0;  // 0: number of cues
  std::uint64_t seed = 1;
  double sd = 1.0;
  double ridge = 0.0;
  double threshold = 0.1;
  std::size_t max_length = 0;  // 0: longest gold sequence + 1
  std::size_t top_k = 10;
  std::filesystem::path output = "ldl_out";
  std::filesystem::path pairs;
  bool write_correlations = false;

  bool simulated() const { return !lexeme_column.empty(); }
};

using KeyValues = std::vector<std::pair<std::string, std::string>>;

// Parses `key = value` lines; '#' starts a comment line.
KeyValues parse_key_values(const std::string& text);
KeyValues read_key_values(const std::filesystem::path& path);

// Sets one field; throws ConfigError on unknown keys or bad values.
void apply_setting(RunConfig& config, const std::string& key,
                   const std::string& value);
// Applies known configuration keys and ignores the rest (manifest results).
void apply_known_settings(RunConfig& config, const KeyValues& values);
bool is_config_key(const std::string& key);

// Fields in a stable order, formatted for a config or manifest file.
KeyValues to_key_values(const RunConfig& config);

// Checks required fields and the simulated-xor-loaded semantic source.
void validate(const RunConfig& config);

}  // namespace ldl
