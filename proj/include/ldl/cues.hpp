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
#include <string_view>
#include <unordered_map>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/SparseCore>

#include "ldl/dataset.hpp"

namespace ldl {

using Tokens = std::vector<std::string>;
using CueSequence = std::vector<std::size_t>;
using SparseRowMatrix = Eigen::SparseMatrix<double, Eigen::RowMajor>;

struct TokenizerOptions {
  bool tokenized = false;
  std::string separator = "_";
  std::string boundary = "#";
};

// Splits a form into tokens and wraps it in boundary tokens. Untokenized
// forms yield one token per UTF-8 code point.
Tokens tokenize_form(std::string_view form, const TokenizerOptions& options);

// Ordered n-gram cue vocabulary. Columns are numbered by first occurrence
// over the dataset, scanned row by row.
class CueInventory {
 public:
  CueInventory(std::size_t n, TokenizerOptions options);

  std::size_t n() const { return n_; }
  std::size_t size() const { return cues_.size(); }
  bool empty() const { return cues_.empty(); }
  const TokenizerOptions& options() const { return options_; }
  const std::string& boundary() const { return options_.boundary; }

  const Tokens& tokens(std::size_t cue) const { return cues_.at(cue); }
  // Separator-joined display form, e.g. "go_rUm" or "#t".
  std::string display(std::size_t cue) const;
  std::vector<std::string> displays() const;

  // Returns the ordinal of `cue`, appending it when unseen.
  std::size_t intern(const Tokens& cue);
  // Ordinal of a cue or npos.
  std::size_t find(const Tokens& cue) const;
  static constexpr std::size_t npos = static_cast<std::size_t>(-1);

  bool starts_with_boundary(std::size_t cue) const;
  bool ends_with_boundary(std::size_t cue) const;

  // Word form spelled by a chain of overlapping cues, boundaries removed.
  std::string spell(const CueSequence& sequence) const;

 private:
  static std::string key(const Tokens& cue);

  std::size_t n_;
  TokenizerOptions options_;
  std::vector<Tokens> cues_;
  std::unordered_map<std::string, std::size_t> index_;
};

// Binary word-by-cue matrix plus each word's left-to-right cue chain.
struct CueMatrix {
  SparseRowMatrix matrix;
  std::vector<CueSequence> sequences;

  std::size_t rows() const { return static_cast<std::size_t>(matrix.rows()); }
  std::size_t cols() const { return static_cast<std::size_t>(matrix.cols()); }
  Eigen::MatrixXd dense() const { return Eigen::MatrixXd(matrix); }
  std::size_t max_sequence_length() const;
};

struct CueObjects {
  CueInventory inventory;
  CueMatrix cues;
};

CueObjects build_cue_matrix(const Dataset& dataset, std::size_t n,
                            const TokenizerOptions& options);
CueObjects build_cue_matrix(const std::vector<std::string>& forms,
                            std::size_t n, const TokenizerOptions& options);

// successors[a] lists every cue b whose first n-1 tokens equal the last n-1
// tokens of a, in ascending ordinal order. Word-final cues have none and
// word-initial cues are nobody's successor.
using Adjacency = std::vector<std::vector<std::size_t>>;
Adjacency adjacency(const CueInventory& inventory);

// One-cue-per-line display strings.
void write_inventory(const CueInventory& inventory,
                     const std::filesystem::path& path);
// Matrix Market coordinate pattern file, 1-based indices.
void write_matrix_market(const SparseRowMatrix& matrix,
                         const std::filesystem::path& path);
SparseRowMatrix read_matrix_market(const std::filesystem::path& path);

}  // namespace ldl
