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

#include "ldl/paths.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>

#include "ldl/dataset.hpp"
#include "ldl/errors.hpp"
#include "ldl/evaluation.hpp"

namespace ldl {

namespace {

// Candidate cues at one position: top_k by support (ties to the lower
// ordinal), restricted to support >= threshold.
std::vector<char> position_mask(const Eigen::Ref<const Eigen::RowVectorXd>& support,
                                double threshold, std::size_t top_k,
                                std::vector<std::size_t>& ordered) {
  ordered.clear();
  for (Eigen::Index c = 0; c < support.size(); ++c) {
    if (support(c) >= threshold) ordered.push_back(static_cast<std::size_t>(c));
  }
  auto by_support = [&](std::size_t a, std::size_t b) {
    const double sa = support(static_cast<Eigen::Index>(a));
    const double sb = support(static_cast<Eigen::Index>(b));
    return sa != sb ? sa > sb : a < b;
  };
  if (top_k > 0 && ordered.size() > top_k) {
    std::partial_sort(ordered.begin(),
                      ordered.begin() + static_cast<std::ptrdiff_t>(top_k),
                      ordered.end(), by_support);
    ordered.resize(top_k);
  }
  std::sort(ordered.begin(), ordered.end());
  std::vector<char> mask(static_cast<std::size_t>(support.size()), 0);
  for (auto c : ordered) mask[c] = 1;
  return mask;
}

bool ranks_before(const Candidate& a, const Candidate& b) {
  const bool na = std::isnan(a.score);
  const bool nb = std::isnan(b.score);
  if (na != nb) return nb;
  if (!na && a.score != b.score) return a.score > b.score;
  return a.cues < b.cues;
}

}  // namespace

Eigen::VectorXd PositionalModel::supports(
    const Eigen::Ref<const Eigen::VectorXd>& meaning,
    std::size_t position) const {
  const auto& map = maps.at(position);
  return map.coefficients.transpose() * meaning;
}

PositionalModel fit_positional(const SemanticMatrix& space,
                               const CueMatrix& cues,
                               const SolverOptions& options, Execution exec) {
  if (cues.rows() == 0) throw DataError("fit_positional: empty dataset");
  if (static_cast<std::size_t>(space.rows()) != cues.rows()) {
    throw DataError("fit_positional: semantic and cue matrices differ in rows");
  }
  const std::size_t positions = cues.max_sequence_length();
  const auto n_cues = static_cast<Eigen::Index>(cues.cols());
  PositionalModel model;
  model.maps.resize(positions);
  model.training_rows.resize(positions);
  kernels::for_each_index(
      static_cast<Eigen::Index>(positions), exec, [&](Eigen::Index pi) {
        const auto p = static_cast<std::size_t>(pi);
        std::vector<Eigen::Index> rows;
        for (std::size_t i = 0; i < cues.sequences.size(); ++i) {
          if (cues.sequences[i].size() > p) {
            rows.push_back(static_cast<Eigen::Index>(i));
          }
        }
        Eigen::MatrixXd x(static_cast<Eigen::Index>(rows.size()), space.dims());
        Eigen::MatrixXd y =
            Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(rows.size()), n_cues);
        for (std::size_t r = 0; r < rows.size(); ++r) {
          const auto ri = static_cast<Eigen::Index>(r);
          x.row(ri) = space.values().row(rows[r]);
          y(ri, static_cast<Eigen::Index>(
                    cues.sequences[static_cast<std::size_t>(rows[r])][p])) = 1.0;
        }
        model.maps[p] = estimate_map(x, y, options);
        model.training_rows[p] = rows.size();
      });
  return model;
}

std::vector<std::vector<CueSequence>> PathResult::ranked_sequences() const {
  std::vector<std::vector<CueSequence>> out(words.size());
  for (std::size_t i = 0; i < words.size(); ++i) {
    for (const auto& c : words[i]) out[i].push_back(c.cues);
  }
  return out;
}

Eigen::VectorXd candidate_form_vector(const CueSequence& sequence,
                                      const CueInventory& inventory) {
  Eigen::VectorXd v = Eigen::VectorXd::Zero(
      static_cast<Eigen::Index>(inventory.size()));
  for (auto c : sequence) {
    if (c >= inventory.size()) {
      throw DataError("unknown cue ordinal " + std::to_string(c));
    }
    v(static_cast<Eigen::Index>(c)) = 1.0;
  }
  return v;
}

double synthesis_score(const CueSequence& sequence,
                       const LinearMap& comprehension,
                       const Eigen::Ref<const Eigen::VectorXd>& target) {
  const auto& f = comprehension.coefficients;
  CueSequence distinct = sequence;
  std::sort(distinct.begin(), distinct.end());
  distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
  Eigen::VectorXd meaning = Eigen::VectorXd::Zero(f.cols());
  for (auto c : distinct) {
    if (static_cast<Eigen::Index>(c) >= f.rows()) {
      throw DataError("unknown cue ordinal " + std::to_string(c));
    }
    meaning += f.row(static_cast<Eigen::Index>(c)).transpose();
  }
  try {
    return pearson(meaning, target);
  } catch (const DataError&) {
    return std::numeric_limits<double>::quiet_NaN();
  }
}

bool is_legal_path(const CueSequence& sequence, const CueInventory& inventory) {
  if (sequence.empty()) return false;
  for (auto c : sequence) {
    if (c >= inventory.size()) return false;
  }
  if (!inventory.starts_with_boundary(sequence.front()) ||
      !inventory.ends_with_boundary(sequence.back())) {
    return false;
  }
  const std::size_t overlap = inventory.n() - 1;
  for (std::size_t k = 0; k < sequence.size(); ++k) {
    const auto& t = inventory.tokens(sequence[k]);
    // The boundary may only open the first cue and close the last one.
    for (std::size_t j = 0; j < t.size(); ++j) {
      const bool edge = (k == 0 && j == 0) ||
                        (k + 1 == sequence.size() && j + 1 == t.size());
      if (!edge && t[j] == inventory.boundary()) return false;
    }
    if (k == 0) continue;
    const auto& prev = inventory.tokens(sequence[k - 1]);
    if (!std::equal(prev.end() - static_cast<std::ptrdiff_t>(overlap),
                    prev.end(), t.begin())) {
      return false;
    }
  }
  return true;
}

Decoding learn_paths(const CueObjects& cue_objects, const SemanticMatrix& space,
                     const LinearMap& comprehension,
                     const PositionalModel& positional,
                     const DecoderOptions& options, Execution exec) {
  const auto& inv = cue_objects.inventory;
  const auto& gold = cue_objects.cues.sequences;
  const auto n_words = static_cast<Eigen::Index>(gold.size());
  if (!(options.threshold > 0.0)) {
    throw ConfigError("decoding threshold must be positive");
  }
  if (space.rows() != n_words) {
    throw DataError("learn_paths: semantic matrix rows do not match the dataset");
  }
  if (comprehension.input_dims() != static_cast<Eigen::Index>(inv.size()) ||
      comprehension.output_dims() != space.dims()) {
    throw DataError("learn_paths: comprehension map has the wrong shape");
  }
  for (const auto& m : positional.maps) {
    if (m.input_dims() != space.dims() ||
        m.output_dims() != static_cast<Eigen::Index>(inv.size())) {
      throw DataError("learn_paths: positional map has the wrong shape");
    }
  }
  const std::size_t longest = cue_objects.cues.max_sequence_length();
  const std::size_t max_length =
      options.max_length ? options.max_length : longest + 1;
  if (max_length < longest) {
    throw ConfigError("max_length " + std::to_string(max_length) +
                      " is shorter than the longest gold sequence (" +
                      std::to_string(longest) + ")");
  }
  const std::size_t positions =
      std::min(max_length, positional.max_positions());
  const Adjacency succ = adjacency(inv);

  Decoding out;
  out.paths.threshold = options.threshold;
  out.paths.max_length = max_length;
  out.paths.top_k = options.top_k;
  out.paths.words.resize(gold.size());
  out.gold.supports.resize(gold.size());

  const Eigen::Index blocks =
      (n_words + kernels::kRowBlock - 1) / kernels::kRowBlock;
  kernels::for_each_index(blocks, exec, [&](Eigen::Index b) {
    const Eigen::Index begin = b * kernels::kRowBlock;
    const Eigen::Index len = std::min(kernels::kRowBlock, n_words - begin);
    const auto meanings = space.values().middleRows(begin, len);
    std::vector<Eigen::MatrixXd> support(positions);
    for (std::size_t p = 0; p < positions; ++p) {
      support[p] = meanings * positional.maps[p].coefficients;
    }
    std::vector<std::size_t> ordered;
    for (Eigen::Index r = 0; r < len; ++r) {
      const auto word = static_cast<std::size_t>(begin + r);
      std::vector<std::vector<char>> masks(positions);
      for (std::size_t p = 0; p < positions; ++p) {
        masks[p] = position_mask(support[p].row(r), options.threshold,
                                 options.top_k, ordered);
      }

      std::vector<CueSequence> complete;
      std::vector<CueSequence> live;
      if (positions > 0) {
        for (std::size_t c = 0; c < inv.size(); ++c) {
          if (!masks[0][c] || !inv.starts_with_boundary(c)) continue;
          if (inv.ends_with_boundary(c) && inv.n() > 1) {
            complete.push_back({c});
          } else if (max_length > 1) {
            live.push_back({c});
          }
        }
      }
      for (std::size_t p = 1; p < positions && !live.empty(); ++p) {
        std::vector<CueSequence> next;
        for (const auto& path : live) {
          for (auto c : succ[path.back()]) {
            if (!masks[p][c]) continue;
            CueSequence grown = path;
            grown.push_back(c);
            if (inv.ends_with_boundary(c)) {
              complete.push_back(std::move(grown));
            } else if (grown.size() < max_length) {
              next.push_back(std::move(grown));
            }
          }
        }
        live = std::move(next);
      }

      const auto target = space.values().row(begin + r).transpose();
      auto& ranked = out.paths.words[word];
      ranked.reserve(complete.size());
      for (auto& seq : complete) {
        const double score = synthesis_score(seq, comprehension, target);
        ranked.push_back({std::move(seq), score});
      }
      std::sort(ranked.begin(), ranked.end(), ranks_before);

      auto& gold_support = out.gold.supports[word];
      gold_support.resize(gold[word].size(), 0.0);
      for (std::size_t p = 0; p < gold[word].size() && p < positions; ++p) {
        gold_support[p] =
            support[p](r, static_cast<Eigen::Index>(gold[word][p]));
      }
    }
  });
  return out;
}

void write_paths_csv(const PathResult& result,
                     const std::vector<std::string>& forms,
                     const CueInventory& inventory,
                     const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw DataError("cannot write '" + path.string() + "'");
  out << "word,rank,candidate,score\n";
  for (std::size_t i = 0; i < result.words.size(); ++i) {
    const auto& ranked = result.words[i];
    for (std::size_t k = 0; k < ranked.size(); ++k) {
      out << csv_escape(forms[i]) << ',' << k + 1 << ','
          << csv_escape(inventory.spell(ranked[k].cues)) << ','
          << (std::isnan(ranked[k].score) ? std::string("NA")
                                          : format_double(ranked[k].score))
          << '\n';
    }
  }
}

void write_gold_paths_csv(const GoldPathInfo& info,
                          const std::vector<std::string>& forms,
                          const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw DataError("cannot write '" + path.string() + "'");
  out << "word,position,support\n";
  for (std::size_t i = 0; i < info.supports.size(); ++i) {
    for (std::size_t p = 0; p < info.supports[i].size(); ++p) {
      out << csv_escape(forms[i]) << ',' << p + 1 << ','
          << format_double(info.supports[i][p]) << '\n';
    }
  }
}

}  // namespace ldl
