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
#include <vector>

#include <Eigen/Dense>

namespace ldl {

// One word of a dataset. `values` is parallel to Dataset::columns().
struct WordRecord {
  std::string form;
  std::vector<std::string> values;
};

// Table of word records read from a CSV file with a header line. Row order
// is the canonical word index shared by every matrix built from it.
class Dataset {
 public:
  Dataset() = default;
  Dataset(std::vector<std::string> columns, std::string form_column,
          std::vector<WordRecord> rows);

  std::size_t row_count() const { return rows_.size(); }
  bool empty() const { return rows_.empty(); }

  const std::vector<std::string>& columns() const { return columns_; }
  const std::string& form_column() const { return form_column_; }
  const std::vector<WordRecord>& rows() const { return rows_; }
  const WordRecord& row(std::size_t i) const { return rows_.at(i); }
  const std::string& form(std::size_t i) const { return rows_.at(i).form; }

  std::vector<std::string> forms() const;

  bool has_column(std::string_view name) const;
  std::size_t column_index(std::string_view name) const;  // throws DataError
  const std::string& value(std::size_t row, std::string_view column) const;

 private:
  std::vector<std::string> columns_;
  std::string form_column_;
  std::vector<WordRecord> rows_;
};

Dataset load_dataset(const std::filesystem::path& path,
                     const std::string& form_column);
void write_dataset(const Dataset& dataset, const std::filesystem::path& path);

// Splits one CSV record, honouring double-quoted fields.
std::vector<std::string> split_csv_line(std::string_view line);
std::string csv_escape(std::string_view field);

// Reads `<word> <v1> ... <vk>` lines. Row i must carry expected_forms[i].
Eigen::MatrixXd load_embeddings(const std::filesystem::path& path,
                                const std::vector<std::string>& expected_forms);

// Reads an embedding-format file without an alignment check.
struct NamedVectors {
  std::vector<std::string> names;
  Eigen::MatrixXd values;
};
NamedVectors read_named_vectors(const std::filesystem::path& path);

void write_embeddings(const std::filesystem::path& path,
                      const std::vector<std::string>& names,
                      const Eigen::MatrixXd& values);

// Shortest decimal that round-trips the double exactly.
std::string format_double(double value);

}  // namespace ldl
