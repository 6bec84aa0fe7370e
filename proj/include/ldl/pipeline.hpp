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

#include <filesystem>
#include <string>

#include "ldl/config.hpp"
#include "ldl/cues.hpp"
#include "ldl/dataset.hpp"
#include "ldl/linear_map.hpp"
#include "ldl/paths.hpp"
#include "ldl/semantics.hpp"

namespace ldl {

// Everything a run estimates, in memory.
struct Model {
  Dataset dataset;
  CueObjects cue_objects;
  SemanticMatrix space;
  LinearMap comprehension;  // F
  LinearMap production;     // G
};

struct FitSummary {
  double comprehension_accuracy = 0.0;
  double production_accuracy = 0.0;
  std::size_t max_length = 0;
};

TokenizerOptions tokenizer_options(const RunConfig& config);
DecoderOptions decoder_options(const RunConfig& config);

// Ingest, cue extraction, semantics, and both maps.
Model build_model(const RunConfig& config);
// Rebuilds the cue objects from the dataset and reads S, F and G back from
// the output directory.
Model load_model(const RunConfig& config);

// Reads <dir>/manifest.txt into a configuration.
RunConfig config_from_manifest(const std::filesystem::path& dir);

// `fit`: estimates everything, evaluates both directions and writes the
// artifacts plus manifest.txt. Nothing is written when any step fails.
FitSummary run_fit(const RunConfig& config);
// `evaluate`: comprehension accuracy from stored artifacts.
double run_evaluate(const RunConfig& config);
// `produce`: decodes every word, writes paths.csv and gold_paths.csv.
double run_produce(const RunConfig& config);
// `measures`: measures.csv, projection.csv, pta.csv when a pair list is
// configured, functional_load.csv for simulated semantics.
void run_measures(const RunConfig& config);
// `project`: projection.csv only.
void run_project(const RunConfig& config);
// `simulate-semantics`: S.txt and lexomes.txt.
void run_simulate(const RunConfig& config);

}  // namespace ldl
