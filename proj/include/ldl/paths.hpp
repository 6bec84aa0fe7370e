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
#include <filesystem>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "ldl/cues.hpp"
#include "ldl/kernels.hpp"
#include "ldl/linear_map.hpp"
#include "ldl/semantics.hpp"

namespace ldl {

// One map per cue position, each predicting from a semantic vector which
// cue occupies that position. Position p is fit only on words whose gold
// sequence reaches p.
struct PositionalModel {
  std::vector<LinearMap> maps;
  std::vector<std::size_t> training_rows;  // words used for each position

  std::size_t max_positions() const { return maps.size(); }
  // Supports of every cue at `position` for one semantic vector.
  Eigen::VectorXd supports(const Eigen::Ref<const Eigen::VectorXd>& meaning,
                           std::size_t position) const;
};

PositionalModel fit_positional(const SemanticMatrix& space,
                               const CueMatrix& cues,
                               const SolverOptions& options = {},
                               Execution exec = Execution::parallel);

struct DecoderOptions {
  double threshold = 0.1;
  std::size_t max_length = 0;  // 0: longest gold sequence + 1
  std::size_t top_k = 10;      // cues kept per position; 0: no limit
};

struct Candidate {
  CueSequence cues;
  double score = 0.0;  // r(F c, s); NaN when F c is constant
};

struct PathResult {
  std::vector<std::vector<Candidate>> words;  // ranked, best first
  double threshold = 0.0;
  std::size_t max_length = 0;
  std::size_t top_k = 0;

  std::vector<std::vector<CueSequence>> ranked_sequences() const;
};

// Support of each gold cue at its own position, per word.
struct GoldPathInfo {
  std::vector<std::vector<double>> supports;
};

struct Decoding {
  PathResult paths;
  GoldPathInfo gold;
};

// For every word: keep the top_k cues with support >= threshold at each
// position, grow adjacency-legal sequences from word-initial to word-final
// cues, and rank the completed sequences by how well F maps them back onto
// the word's semantic vector.
Decoding learn_paths(const CueObjects& cue_objects, const SemanticMatrix& space,
                     const LinearMap& comprehension,
                     const PositionalModel& positional,
                     const DecoderOptions& options = {},
                     Execution exec = Execution::parallel);

// Binary presence vector over the inventory.
Eigen::VectorXd candidate_form_vector(const CueSequence& sequence,
                                      const CueInventory& inventory);

// Correlation of F applied to a candidate form with the target meaning.
double synthesis_score(const CueSequence& sequence,
                       const LinearMap& comprehension,
                       const Eigen::Ref<const Eigen::VectorXd>& target);

// True when the sequence starts and ends at a boundary and consecutive cues
// overlap in n-1 tokens.
bool is_legal_path(const CueSequence& sequence, const CueInventory& inventory);

void write_paths_csv(const PathResult& result,
                     const std::vector<std::string>& forms,
                     const CueInventory& inventory,
                     const std::filesystem::path& path);
void write_gold_paths_csv(const GoldPathInfo& info,
                          const std::vector<std::string>& forms,
                          const std::filesystem::path& path);

}  // namespace ldl
