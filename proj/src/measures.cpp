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

#include "ldl/measures.hpp"

#include <cmath>
#include <fstream>
#include <limits>

#include <Eigen/SVD>

#include "ldl/dataset.hpp"
#include "ldl/errors.hpp"
#include "ldl/evaluation.hpp"

namespace ldl {

double prime_target_approximation(const Eigen::MatrixXd& r, std::size_t prime,
                                  std::size_t target) {
  if (prime >= static_cast<std::size_t>(r.rows()) ||
      target >= static_cast<std::size_t>(r.cols())) {
    throw DataError("prime/target index out of range");
  }
  return r(static_cast<Eigen::Index>(prime), static_cast<Eigen::Index>(target));
}

std::vector<double> distance_legs(const LinearMap& production,
                                  const CueSequence& sequence) {
  const auto& g = production.coefficients;
  if (sequence.empty()) throw DataError("distance_travelled: empty sequence");
  std::vector<double> legs;
  legs.reserve(sequence.size());
  Eigen::VectorXd here = Eigen::VectorXd::Zero(g.rows());
  for (auto c : sequence) {
    if (static_cast<Eigen::Index>(c) >= g.cols()) {
      throw DataError("distance_travelled: invalid cue ordinal " +
                      std::to_string(c));
    }
    const auto next = g.col(static_cast<Eigen::Index>(c));
    legs.push_back((next - here).norm());
    here = next;
  }
  return legs;
}

double distance_travelled(const LinearMap& production,
                          const CueSequence& sequence) {
  double total = 0.0;
  for (double leg : distance_legs(production, sequence)) total += leg;
  return total;
}

double total_support(const GoldPathInfo& info, std::size_t word) {
  if (word >= info.supports.size()) {
    throw DataError("total_support: no gold-path information for word " +
                    std::to_string(word + 1));
  }
  double total = 0.0;
  for (double s : info.supports[word]) total += s;
  return total;
}

Eigen::MatrixXd functional_load(const LinearMap& production,
                                const SemanticMatrix& space) {
  if (space.source() != SemanticSource::simulated) {
    throw ConfigError("functional load needs simulated semantics");
  }
  const auto& g = production.coefficients;
  const Eigen::MatrixXd lex = space.lexome_matrix();
  if (lex.cols() != g.rows()) {
    throw DataError("functional_load: lexome and map dimensions differ");
  }
  Eigen::MatrixXd out(g.cols(), lex.rows());
  for (Eigen::Index c = 0; c < g.cols(); ++c) {
    for (Eigen::Index l = 0; l < lex.rows(); ++l) {
      try {
        out(c, l) = pearson(g.col(c), lex.row(l).transpose());
      } catch (const DataError&) {
        out(c, l) = std::numeric_limits<double>::quiet_NaN();
      }
    }
  }
  return out;
}

Projection pca_project(const LinearMap& production, Eigen::Index components) {
  const auto& g = production.coefficients;
  if (g.cols() < 2) throw DataError("pca_project: need at least two cues");
  if (components < 1) throw ConfigError("pca_project: components must be >= 1");
  Eigen::MatrixXd centered = g.transpose();
  centered.rowwise() -= centered.colwise().mean();

  Eigen::JacobiSVD<Eigen::MatrixXd> svd(centered, Eigen::ComputeThinV);
  const Eigen::Index avail = std::min(components, svd.matrixV().cols());
  Projection out;
  out.axes = Eigen::MatrixXd::Zero(g.rows(), components);
  out.singular_values = Eigen::VectorXd::Zero(components);
  for (Eigen::Index k = 0; k < avail; ++k) {
    Eigen::VectorXd axis = svd.matrixV().col(k);
    Eigen::Index lead = 0;
    axis.cwiseAbs().maxCoeff(&lead);
    if (axis(lead) < 0.0) axis = -axis;
    out.axes.col(k) = axis;
    out.singular_values(k) = svd.singularValues()(k);
  }
  out.coordinates = centered * out.axes;
  return out;
}

WordMeasures word_measures(const LinearMap& production, const CueMatrix& cues,
                           const GoldPathInfo& info) {
  WordMeasures out;
  out.distance.reserve(cues.sequences.size());
  out.support.reserve(cues.sequences.size());
  for (std::size_t i = 0; i < cues.sequences.size(); ++i) {
    out.distance.push_back(distance_travelled(production, cues.sequences[i]));
    out.support.push_back(total_support(info, i));
  }
  return out;
}

void write_measures_csv(const WordMeasures& measures,
                        const std::vector<std::string>& forms,
                        const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw DataError("cannot write '" + path.string() + "'");
  out << "word,distance_travelled,total_support\n";
  for (std::size_t i = 0; i < forms.size(); ++i) {
    out << csv_escape(forms[i]) << ',' << format_double(measures.distance[i])
        << ',' << format_double(measures.support[i]) << '\n';
  }
}

std::vector<PrimeTargetPair> read_pairs_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open pair list '" + path.string() + "'");
  std::string line;
  if (!std::getline(in, line)) {
    throw DataError(path.string() + ": pair list has no header");
  }
  if (!line.empty() && line.back() == '\r') line.pop_back();
  const auto header = split_csv_line(line);
  std::size_t prime_col = header.size(), target_col = header.size();
  for (std::size_t j = 0; j < header.size(); ++j) {
    if (header[j] == "prime") prime_col = j;
    if (header[j] == "target") target_col = j;
  }
  if (prime_col == header.size() || target_col == header.size()) {
    throw DataError(path.string() + ": pair list needs prime and target columns");
  }
  std::vector<PrimeTargetPair> pairs;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const auto fields = split_csv_line(line);
    if (fields.size() != header.size()) {
      throw DataError(path.string() + ": ragged line " + std::to_string(line_no));
    }
    pairs.push_back({fields[prime_col], fields[target_col]});
  }
  return pairs;
}

void write_pta_csv(const std::vector<PrimeTargetPair>& pairs,
                   const std::vector<double>& values,
                   const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw DataError("cannot write '" + path.string() + "'");
  out << "prime,target,pta\n";
  for (std::size_t k = 0; k < pairs.size(); ++k) {
    out << csv_escape(pairs[k].prime) << ',' << csv_escape(pairs[k].target)
        << ',' << format_double(values[k]) << '\n';
  }
}

void write_projection_csv(const Projection& projection,
                          const CueInventory& inventory,
                          const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw DataError("cannot write '" + path.string() + "'");
  out << "cue";
  for (Eigen::Index k = 0; k < projection.coordinates.cols(); ++k) {
    out << ",pc" << k + 1;
  }
  out << '\n';
  for (Eigen::Index c = 0; c < projection.coordinates.rows(); ++c) {
    out << csv_escape(inventory.display(static_cast<std::size_t>(c)));
    for (Eigen::Index k = 0; k < projection.coordinates.cols(); ++k) {
      out << ',' << format_double(projection.coordinates(c, k));
    }
    out << '\n';
  }
}

void write_functional_load_csv(const Eigen::MatrixXd& load,
                               const CueInventory& inventory,
                               const std::vector<std::string>& lexomes,
                               const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw DataError("cannot write '" + path.string() + "'");
  out << "cue";
  for (const auto& l : lexomes) out << ',' << csv_escape(l);
  out << '\n';
  for (Eigen::Index c = 0; c < load.rows(); ++c) {
    out << csv_escape(inventory.display(static_cast<std::size_t>(c)));
    for (Eigen::Index l = 0; l < load.cols(); ++l) {
      out << ','
          << (std::isnan(load(c, l)) ? std::string("NA")
                                     : format_double(load(c, l)));
    }
    out << '\n';
  }
}

}  // namespace ldl
