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
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "ldl/cues.hpp"
#include "ldl/kernels.hpp"

namespace ldl {

// Pearson correlation; throws DataError on zero variance or length mismatch.
double pearson(const Eigen::Ref<const Eigen::VectorXd>& u,
               const Eigen::Ref<const Eigen::VectorXd>& v);

struct CorrelationResult {
  double accuracy = 0.0;
  std::vector<bool> correct;
  std::vector<Eigen::Index> best;  // gold row closest to each prediction
  std::optional<Eigen::MatrixXd> r;  // r(s_hat_i, s_j), when requested
};

// Word i counts as understood when the gold row correlating best with
// s_hat_i carries the same form as word i. Among tied gold rows the lowest
// index wins.
CorrelationResult eval_sc(const Eigen::MatrixXd& s_hat,
                          const Eigen::MatrixXd& s,
                          const std::vector<std::string>& forms,
                          bool keep_r = true,
                          Execution exec = Execution::parallel);

// Fraction of words whose top-ranked candidate equals the gold sequence.
// A word without candidates counts as wrong.
double eval_production(const std::vector<std::vector<CueSequence>>& decoded,
                       const std::vector<CueSequence>& gold);

// R as CSV: header of gold forms, one row per predicted form.
void write_correlations_csv(const Eigen::MatrixXd& r,
                            const std::vector<std::string>& forms,
                            const std::filesystem::path& path);

}  // namespace ldl
