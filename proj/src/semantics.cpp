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

#include "ldl/semantics.hpp"

#include <random>

#include "ldl/errors.hpp"

namespace ldl {

namespace {

std::uint64_t fnv1a(const std::string& text) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char ch : text) {
    h ^= ch;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

}  // namespace

SemanticMatrix::SemanticMatrix(Eigen::MatrixXd values, SemanticSource source)
    : values_(std::move(values)), source_(source) {}

const Eigen::VectorXd& SemanticMatrix::lexome_vector(
    const std::string& name) const {
  if (source_ != SemanticSource::simulated) {
    throw ConfigError("lexome vectors exist only for simulated semantics");
  }
  if (auto it = lexomes.find(name); it != lexomes.end()) return it->second;
  const Eigen::VectorXd* match = nullptr;
  for (const auto& [key, vec] : lexomes) {
    const auto eq = key.find('=');
    if (eq != std::string::npos && key.compare(eq + 1, std::string::npos,
                                               name) == 0) {
      if (match) throw ConfigError("ambiguous lexome '" + name + "'");
      match = &vec;
    }
  }
  if (!match) throw DataError("unknown lexome '" + name + "'");
  return *match;
}

Eigen::MatrixXd SemanticMatrix::lexome_matrix() const {
  Eigen::MatrixXd m(static_cast<Eigen::Index>(lexome_names.size()), dims());
  for (std::size_t i = 0; i < lexome_names.size(); ++i) {
    m.row(static_cast<Eigen::Index>(i)) =
        lexomes.at(lexome_names[i]).transpose();
  }
  return m;
}

std::string feature_lexome_name(const std::string& column,
                                const std::string& value) {
  return column + "=" + value;
}

Eigen::VectorXd elementary_vector(const std::string& key, std::uint64_t seed,
                                  Eigen::Index dims, double mean, double sd) {
  std::mt19937_64 gen(splitmix64(seed ^ fnv1a(key)));
  std::normal_distribution<double> normal(mean, sd);
  Eigen::VectorXd v(dims);
  for (Eigen::Index j = 0; j < dims; ++j) v(j) = normal(gen);
  return v;
}

SemanticMatrix simulate_semantics(const Dataset& dataset,
                                  const SimulationOptions& options) {
  if (options.dims < 1) throw ConfigError("semantic dims must be at least 1");
  if (!(options.sd > 0.0)) throw ConfigError("semantic sd must be positive");
  if (options.lexeme_column.empty()) throw ConfigError("no lexeme column");
  const std::size_t lex_col = dataset.column_index(options.lexeme_column);
  std::vector<std::size_t> feat_cols;
  for (const auto& f : options.feature_columns) {
    feat_cols.push_back(dataset.column_index(f));
  }

  std::vector<std::string> names;
  std::map<std::string, Eigen::VectorXd> lexomes;
  auto lexome = [&](const std::string& name,
                    const std::string& key) -> const Eigen::VectorXd& {
    auto it = lexomes.find(name);
    if (it == lexomes.end()) {
      names.push_back(name);
      it = lexomes
               .emplace(name, elementary_vector(key, options.seed, options.dims,
                                                options.mean, options.sd))
               .first;
    }
    return it->second;
  };

  Eigen::MatrixXd values(static_cast<Eigen::Index>(dataset.row_count()),
                         options.dims);
  for (std::size_t i = 0; i < dataset.row_count(); ++i) {
    const auto& rec = dataset.row(i);
    const auto& lex = rec.values[lex_col];
    if (lex.empty()) {
      throw DataError("empty lexeme at row " + std::to_string(i + 1));
    }
    Eigen::VectorXd row = lexome(lex, "lexeme\x1f" + lex);
    for (std::size_t k = 0; k < feat_cols.size(); ++k) {
      const auto& value = rec.values[feat_cols[k]];
      if (value.empty()) {
        throw DataError("empty value in feature column '" +
                        options.feature_columns[k] + "' at row " +
                        std::to_string(i + 1));
      }
      row += lexome(feature_lexome_name(options.feature_columns[k], value),
                    "feature\x1f" + options.feature_columns[k] + "\x1f" +
                        value);
    }
    values.row(static_cast<Eigen::Index>(i)) = row.transpose();
  }

  SemanticMatrix out(std::move(values), SemanticSource::simulated);
  out.seed = options.seed;
  out.lexeme_column = options.lexeme_column;
  out.feature_columns = options.feature_columns;
  out.lexome_names = std::move(names);
  out.lexomes = std::move(lexomes);
  return out;
}

SemanticMatrix load_semantics(const std::filesystem::path& path,
                              const Dataset& dataset) {
  SemanticMatrix out(load_embeddings(path, dataset.forms()),
                     SemanticSource::loaded);
  out.path = path;
  if (!out.values().allFinite()) {
    throw NumericalError(path.string() + ": non-finite embedding value");
  }
  return out;
}

void write_lexomes(const SemanticMatrix& space,
                   const std::filesystem::path& path) {
  write_embeddings(path, space.lexome_names, space.lexome_matrix());
}

}  // namespace ldl
