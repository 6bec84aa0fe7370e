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

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "ldl/dataset.hpp"

namespace ldl {

enum class SemanticSource { simulated, loaded };

// Word-by-dimension semantic matrix S. When simulated, every row is the
// exact sum of the elementary vectors of its lexeme and feature values.
class SemanticMatrix {
 public:
  SemanticMatrix() = default;
  SemanticMatrix(Eigen::MatrixXd values, SemanticSource source);

  const Eigen::MatrixXd& values() const { return values_; }
  Eigen::Index rows() const { return values_.rows(); }
  Eigen::Index dims() const { return values_.cols(); }
  SemanticSource source() const { return source_; }

  // Simulated provenance.
  std::uint64_t seed = 0;
  std::string lexeme_column;
  std::vector<std::string> feature_columns;
  // Loaded provenance.
  std::filesystem::path path;

  // Lexome names in first-use order; lexemes keep their bare value and
  // feature values are qualified as "Column=value".
  std::vector<std::string> lexome_names;
  std::map<std::string, Eigen::VectorXd> lexomes;

  // Accepts a canonical name or an unambiguous bare feature value.
  const Eigen::VectorXd& lexome_vector(const std::string& name) const;
  Eigen::MatrixXd lexome_matrix() const;  // rows follow lexome_names

 private:
  Eigen::MatrixXd values_;
  SemanticSource source_ = SemanticSource::loaded;
};

struct SimulationOptions {
  std::string lexeme_column;
  std::vector<std::string> feature_columns;
  Eigen::Index dims = 0;
  std::uint64_t seed = 1;
  double mean = 0.0;
  double sd = 1.0;
};

SemanticMatrix simulate_semantics(const Dataset& dataset,
                                  const SimulationOptions& options);

SemanticMatrix load_semantics(const std::filesystem::path& path,
                              const Dataset& dataset);

// Elementary vector for one lexome key. Depends only on (key, seed, dims),
// so adding words to a dataset never changes existing vectors.
Eigen::VectorXd elementary_vector(const std::string& key, std::uint64_t seed,
                                  Eigen::Index dims, double mean, double sd);

std::string feature_lexome_name(const std::string& column,
                                const std::string& value);

void write_lexomes(const SemanticMatrix& space,
                   const std::filesystem::path& path);

}  // namespace ldl
