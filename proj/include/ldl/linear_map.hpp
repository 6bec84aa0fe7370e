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

#include <Eigen/Dense>

#include "ldl/cues.hpp"
#include "ldl/semantics.hpp"

namespace ldl {

enum class Solver { cholesky, svd };

// Dense coefficient matrix B (input dims x output dims) solving
// min ||X B - Y||^2 + ridge ||B||^2, column by column.
struct LinearMap {
  Eigen::MatrixXd coefficients;
  double ridge = 0.0;
  double fit_residual = 0.0;  // ||X B - Y||_F
  Solver solver = Solver::cholesky;
  Eigen::Index rank = 0;

  Eigen::Index input_dims() const { return coefficients.rows(); }
  Eigen::Index output_dims() const { return coefficients.cols(); }
};

struct SolverOptions {
  double ridge = 0.0;
  // Normal equations are used only when the reciprocal condition estimate of
  // X'X + ridge I is at least this; otherwise the singular-value route.
  double min_rcond = 1e-7;
};

// Minimum-norm least-squares solution when ridge == 0 and X is rank
// deficient, so identical columns of Y (or of X) get identical coefficients.
LinearMap estimate_map(const Eigen::MatrixXd& x, const Eigen::MatrixXd& y,
                       const SolverOptions& options = {});
LinearMap estimate_map(const SparseRowMatrix& x, const Eigen::MatrixXd& y,
                       const SolverOptions& options = {});
LinearMap estimate_map(const Eigen::MatrixXd& x, const SparseRowMatrix& y,
                       const SolverOptions& options = {});

Eigen::MatrixXd apply_map(const Eigen::MatrixXd& x, const LinearMap& map);
Eigen::MatrixXd apply_map(const SparseRowMatrix& x, const LinearMap& map);

// F: cue space -> semantic space, solving S = C F.
LinearMap comprehension_map(const CueMatrix& cues, const SemanticMatrix& space,
                            const SolverOptions& options = {});
// G: semantic space -> cue space, solving C = S G.
LinearMap production_map(const SemanticMatrix& space, const CueMatrix& cues,
                         const SolverOptions& options = {});

// Binary layout: "LDLMAP01", u64 rows, u64 cols, f64 ridge, f64 residual,
// then row-major doubles, all little-endian.
void save_map_binary(const LinearMap& map, const std::filesystem::path& path);
LinearMap load_map_binary(const std::filesystem::path& path);
// Text layout: "<rows> <cols> <ridge> <residual>" then one row per line.
void save_map_text(const LinearMap& map, const std::filesystem::path& path);
LinearMap load_map_text(const std::filesystem::path& path);

}  // namespace ldl
