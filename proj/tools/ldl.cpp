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

// ldl: command-line driver for fitting and analysing a discriminative lexicon.

#include <CLI11.hpp>

#include <cstdio>
#include <filesystem>
#include <iostream>
#include <map>
#include <string>

#include "ldl/config.hpp"
#include "ldl/errors.hpp"
#include "ldl/dataset.hpp"
#include "ldl/pipeline.hpp"

namespace {

namespace fs = std::filesystem;

struct Flags {
  std::string config_file;
  std::map<std::string, std::string> values;
  std::map<std::string, bool> switches;
  std::map<std::string, CLI::Option*> options;
};

const char* const kValueKeys[] = {
    "dataset", "form_column", "lexeme_column", "feature_columns", "embeddings",
    "grams",   "separator",   "boundary",      "dims",            "seed",
    "sd",      "ridge",       "threshold",     "max_length",      "top_k",
    "output",  "pairs"};
const char* const kSwitchKeys[] = {"tokenized", "write_correlations"};

std::string flag_name(std::string key) {
  for (char& c : key) {
    if (c == '_') c = '-';
  }
  return "--" + key;
}

void add_config_flags(CLI::App& app, Flags& flags) {
  app.add_option("--config", flags.config_file, "key = value configuration file");
  for (const char* key : kValueKeys) {
    flags.options[key] = app.add_option(flag_name(key), flags.values[key]);
  }
  for (const char* key : kSwitchKeys) {
    flags.options[key] = app.add_flag(flag_name(key), flags.switches[key]);
  }
}

// Manifest of an earlier fit, then the config file, then flags.
ldl::RunConfig resolve(const Flags& flags, bool use_manifest) {
  ldl::KeyValues file_values;
  if (!flags.config_file.empty()) {
    file_values = ldl::read_key_values(flags.config_file);
  }
  fs::path output = "ldl_out";
  for (const auto& [k, v] : file_values) {
    if (k == "output") output = v;
  }
  if (flags.options.at("output")->count() > 0) output = flags.values.at("output");

  ldl::RunConfig config;
  if (use_manifest && fs::exists(output / "manifest.txt")) {
    config = ldl::config_from_manifest(output);
  }
  for (const auto& [k, v] : file_values) ldl::apply_setting(config, k, v);
  for (const auto& [key, option] : flags.options) {
    if (option->count() == 0) continue;
    auto sw = flags.switches.find(key);
    if (sw != flags.switches.end()) {
      ldl::apply_setting(config, key, sw->second ? "true" : "false");
    } else {
      ldl::apply_setting(config, key, flags.values.at(key));
    }
  }
  config.output = output;
  return config;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Linear discriminative learning toolkit"};
  app.require_subcommand(1);

  Flags fit_flags, eval_flags, produce_flags, measures_flags, project_flags,
      simulate_flags;
  auto* fit = app.add_subcommand("fit", "estimate cues, semantics and both maps");
  auto* evaluate = app.add_subcommand("evaluate", "comprehension accuracy");
  auto* produce = app.add_subcommand("produce", "decode word forms from meanings");
  auto* measures = app.add_subcommand("measures", "per-word processing measures");
  auto* project = app.add_subcommand("project", "2-D projection of cue vectors");
  auto* simulate = app.add_subcommand("simulate-semantics",
                                      "write simulated semantic vectors");
  add_config_flags(*fit, fit_flags);
  add_config_flags(*evaluate, eval_flags);
  add_config_flags(*produce, produce_flags);
  add_config_flags(*measures, measures_flags);
  add_config_flags(*project, project_flags);
  add_config_flags(*simulate, simulate_flags);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (fit->parsed()) {
      const auto summary = ldl::run_fit(resolve(fit_flags, false));
      std::cout << "comprehension_accuracy " << ldl::format_double(summary.comprehension_accuracy)
                << "\nproduction_accuracy " << ldl::format_double(summary.production_accuracy)
                << '\n';
    } else if (evaluate->parsed()) {
      std::cout << "comprehension_accuracy "
                << ldl::format_double(ldl::run_evaluate(resolve(eval_flags, true))) << '\n';
    } else if (produce->parsed()) {
      std::cout << "production_accuracy "
                << ldl::format_double(ldl::run_produce(resolve(produce_flags, true))) << '\n';
    } else if (measures->parsed()) {
      ldl::run_measures(resolve(measures_flags, true));
    } else if (project->parsed()) {
      ldl::run_project(resolve(project_flags, true));
    } else if (simulate->parsed()) {
      ldl::run_simulate(resolve(simulate_flags, false));
    }
  } catch (const ldl::ConfigError& e) {
    std::cerr << "ldl: configuration error: " << e.what() << '\n';
    return 2;
  } catch (const ldl::DataError& e) {
    std::cerr << "ldl: data error: " << e.what() << '\n';
    return 3;
  } catch (const ldl::NumericalError& e) {
    std::cerr << "ldl: numerical failure: " << e.what() << '\n';
    return 4;
  } catch (const std::exception& e) {
    std::cerr << "ldl: " << e.what() << '\n';
    return 3;
  }
  return 0;
}
