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
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "ldl/cues.hpp"
#include "ldl/linear_map.hpp"
#include "ldl/paths.hpp"
#include "ldl/semantics.hpp"

namespace ldl {

// r(s_hat_prime, s_target), read from the comprehension correlation matrix.
double prime_target_approximation(const Eigen::MatrixXd& r, std::size_t prime,
                                  std::size_t target);

// Summed Euclidean distance origin -> g(cue_1) -> ... -> g(cue_last) over the
// full-dimensional columns of the production map.
double distance_travelled(const LinearMap& production,
                          const CueSequence& sequence);
// Individual legs, first leg from the origin.
std::vector<double> distance_legs(const LinearMap& production,
                                  const CueSequence& sequence);

// Sum of the positional supports of a word's gold cues.
double total_support(const GoldPathInfo& info, std::size_t word);

// Pearson correlation of each cue column of G (rows of the result) with
// each lexome vector (columns). Undefined correlations are NaN.
Eigen::MatrixXd functional_load(const LinearMap& production,
                                const SemanticMatrix& space);

// Cue columns of G, centered over cues and projected on their leading
// principal axes. Each axis is oriented so that its largest-magnitude
// loading is positive.
struct Projection {
  Eigen::MatrixXd coordinates;  // cues x components
  Eigen::MatrixXd axes;         // dims x components
  Eigen::VectorXd singular_values;
};
Projection pca_project(const LinearMap& production,
                       Eigen::Index components = 2);

struct WordMeasures {
  std::vector<double> distance;
  std::vector<double> support;
};
WordMeasures word_measures(const LinearMap& production, const CueMatrix& cues,
                           const GoldPathInfo& info);

void write_measures_csv(const WordMeasures& measures,
                        const std::vector<std::string>& forms,
                        const std::filesystem::path& path);

struct PrimeTargetPair {
  std::string prime;
  std::string target;
};
std::vector<PrimeTargetPair> read_pairs_csv(const std::filesystem::path& path);
void write_pta_csv(const std::vector<PrimeTargetPair>& pairs,
                   const std::vector<double>& values,
                   const std::filesystem::path& path);

void write_projection_csv(const Projection& projection,
                          const CueInventory& inventory,
                          const std::filesystem::path& path);
void write_functional_load_csv(const Eigen::MatrixXd& load,
                               const CueInventory& inventory,
                               const std::vector<std::string>& lexomes,
                               const std::filesystem::path& path);

}  // namespace ldl
