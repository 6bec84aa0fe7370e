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

#include "ldl/dataset.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "ldl/errors.hpp"

namespace ldl {

namespace {

void strip_cr(std::string& line) {
  if (!line.empty() && line.back() == '\r') line.pop_back();
}

std::vector<std::string> split_whitespace(const std::string& line) {
  std::vector<std::string> out;
  std::istringstream in(line);
  std::string field;
  while (in >> field) out.push_back(std::move(field));
  return out;
}

double parse_double(const std::string& text, std::size_t line_no) {
  double v = 0.0;
  const char* first = text.data();
  const char* last = text.data() + text.size();
  if (!text.empty() && *first == '+') ++first;
  auto [ptr, ec] = std::from_chars(first, last, v);
  if (ec != std::errc() || ptr != last) {
    throw DataError("non-numeric field '" + text + "' at line " +
                    std::to_string(line_no));
  }
  return v;
}

}  // namespace

Dataset::Dataset(std::vector<std::string> columns, std::string form_column,
                 std::vector<WordRecord> rows)
    : columns_(std::move(columns)),
      form_column_(std::move(form_column)),
      rows_(std::move(rows)) {
  std::set<std::string> seen;
  for (const auto& c : columns_) {
    if (!seen.insert(c).second) throw DataError("duplicate column '" + c + "'");
  }
  if (!seen.count(form_column_)) {
    throw DataError("missing form column '" + form_column_ + "'");
  }
  const std::size_t form_idx = column_index(form_column_);
  for (std::size_t i = 0; i < rows_.size(); ++i) {
    auto& r = rows_[i];
    if (r.values.size() != columns_.size()) {
      throw DataError("row " + std::to_string(i + 1) + " has " +
                      std::to_string(r.values.size()) + " fields, expected " +
                      std::to_string(columns_.size()));
    }
    if (r.form.empty()) r.form = r.values[form_idx];
    if (r.form.empty()) {
      throw DataError("empty form at row " + std::to_string(i + 1));
    }
  }
}

std::vector<std::string> Dataset::forms() const {
  std::vector<std::string> out;
  out.reserve(rows_.size());
  for (const auto& r : rows_) out.push_back(r.form);
  return out;
}

bool Dataset::has_column(std::string_view name) const {
  for (const auto& c : columns_) {
    if (c == name) return true;
  }
  return false;
}

std::size_t Dataset::column_index(std::string_view name) const {
  for (std::size_t i = 0; i < columns_.size(); ++i) {
    if (columns_[i] == name) return i;
  }
  throw DataError("missing column '" + std::string(name) + "'");
}

const std::string& Dataset::value(std::size_t row,
                                  std::string_view column) const {
  return rows_.at(row).values.at(column_index(column));
}

std::vector<std::string> split_csv_line(std::string_view line) {
  std::vector<std::string> out;
  std::string field;
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char ch = line[i];
    if (quoted) {
      if (ch == '"') {
        if (i + 1 < line.size() && line[i + 1] == '"') {
          field.push_back('"');
          ++i;
        } else {
          quoted = false;
        }
      } else {
        field.push_back(ch);
      }
    } else if (ch == '"') {
      quoted = true;
    } else if (ch == ',') {
      out.push_back(std::move(field));
      field.clear();
    } else {
      field.push_back(ch);
    }
  }
  if (quoted) throw DataError("unterminated quoted field");
  out.push_back(std::move(field));
  return out;
}

std::string csv_escape(std::string_view field) {
  if (field.find_first_of(",\"\n\r") == std::string_view::npos) {
    return std::string(field);
  }
  std::string out = "\"";
  for (char ch : field) {
    if (ch == '"') out.push_back('"');
    out.push_back(ch);
  }
  out.push_back('"');
  return out;
}

Dataset load_dataset(const std::filesystem::path& path,
                     const std::string& form_column) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open dataset '" + path.string() + "'");
  std::string line;
  if (!std::getline(in, line)) {
    throw DataError("dataset '" + path.string() + "' has no header line");
  }
  strip_cr(line);
  if (line.rfind("\xEF\xBB\xBF", 0) == 0) line.erase(0, 3);
  auto columns = split_csv_line(line);

  std::vector<WordRecord> rows;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    strip_cr(line);
    if (line.empty()) continue;
    WordRecord rec;
    try {
      rec.values = split_csv_line(line);
    } catch (const DataError& e) {
      throw DataError(std::string(e.what()) + " at line " +
                      std::to_string(line_no));
    }
    rows.push_back(std::move(rec));
  }
  try {
    return Dataset(std::move(columns), form_column, std::move(rows));
  } catch (const DataError& e) {
    throw DataError(path.string() + ": " + e.what());
  }
}

void write_dataset(const Dataset& dataset, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw DataError("cannot write '" + path.string() + "'");
  const auto& cols = dataset.columns();
  for (std::size_t j = 0; j < cols.size(); ++j) {
    out << (j ? "," : "") << csv_escape(cols[j]);
  }
  out << '\n';
  for (const auto& r : dataset.rows()) {
    for (std::size_t j = 0; j < r.values.size(); ++j) {
      out << (j ? "," : "") << csv_escape(r.values[j]);
    }
    out << '\n';
  }
}

NamedVectors read_named_vectors(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open embeddings '" + path.string() + "'");
  std::vector<std::string> names;
  std::vector<double> flat;
  std::size_t dims = 0;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    strip_cr(line);
    auto fields = split_whitespace(line);
    if (fields.empty()) continue;
    const std::size_t k = fields.size() - 1;
    if (names.empty()) {
      dims = k;
    } else if (k != dims) {
      throw DataError(path.string() + ": ragged line " +
                      std::to_string(line_no) + " has " + std::to_string(k) +
                      " values, expected " + std::to_string(dims));
    }
    names.push_back(fields[0]);
    for (std::size_t j = 1; j < fields.size(); ++j) {
      flat.push_back(parse_double(fields[j], line_no));
    }
  }
  NamedVectors out;
  out.names = std::move(names);
  out.values.resize(static_cast<Eigen::Index>(out.names.size()),
                    static_cast<Eigen::Index>(dims));
  for (std::size_t i = 0; i < out.names.size(); ++i) {
    for (std::size_t j = 0; j < dims; ++j) {
      out.values(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
          flat[i * dims + j];
    }
  }
  return out;
}

Eigen::MatrixXd load_embeddings(const std::filesystem::path& path,
                                const std::vector<std::string>& expected_forms) {
  auto nv = read_named_vectors(path);
  const std::size_t n = std::min(nv.names.size(), expected_forms.size());
  for (std::size_t i = 0; i < n; ++i) {
    if (nv.names[i] != expected_forms[i]) {
      throw DataError(path.string() + ": order mismatch at line " +
                      std::to_string(i + 1) + " (found '" + nv.names[i] +
                      "', expected '" + expected_forms[i] + "')");
    }
  }
  if (nv.names.size() != expected_forms.size()) {
    throw DataError(path.string() + ": " + std::to_string(nv.names.size()) +
                    " vectors for " + std::to_string(expected_forms.size()) +
                    " words");
  }
  return std::move(nv.values);
}

std::string format_double(double value) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value);
  if (ec != std::errc()) throw NumericalError("cannot format value");
  return std::string(buf, ptr);
}

void write_embeddings(const std::filesystem::path& path,
                      const std::vector<std::string>& names,
                      const Eigen::MatrixXd& values) {
  if (static_cast<Eigen::Index>(names.size()) != values.rows()) {
    throw DataError("embedding export: " + std::to_string(names.size()) +
                    " names for " + std::to_string(values.rows()) + " rows");
  }
  std::ofstream out(path);
  if (!out) throw DataError("cannot write '" + path.string() + "'");
  for (Eigen::Index i = 0; i < values.rows(); ++i) {
    const auto& name = names[static_cast<std::size_t>(i)];
    if (name.empty() || name.find_first_of(" \t\n\r") != std::string::npos) {
      throw DataError("embedding export: name '" + name +
                      "' is empty or contains whitespace");
    }
    out << name;
    for (Eigen::Index j = 0; j < values.cols(); ++j) {
      out << ' ' << format_double(values(i, j));
    }
    out << '\n';
  }
}

}  // namespace ldl
