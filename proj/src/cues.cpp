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

#include "ldl/cues.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "ldl/errors.hpp"

namespace ldl {

namespace {

std::size_t utf8_length(unsigned char lead) {
  if (lead < 0x80) return 1;
  if ((lead >> 5) == 0x6) return 2;
  if ((lead >> 4) == 0xE) return 3;
  if ((lead >> 3) == 0x1E) return 4;
  return 1;  // stray continuation byte; keep it as its own token
}

}  // namespace

Tokens tokenize_form(std::string_view form, const TokenizerOptions& options) {
  if (form.empty()) throw DataError("empty form");
  if (options.boundary.empty()) throw ConfigError("empty boundary symbol");
  if (form.find(options.boundary) != std::string_view::npos) {
    throw DataError("form '" + std::string(form) +
                    "' contains the boundary symbol '" + options.boundary +
                    "'");
  }
  Tokens tokens{options.boundary};
  if (options.tokenized) {
    if (options.separator.empty()) {
      throw ConfigError("tokenized forms need a non-empty separator");
    }
    std::size_t start = 0;
    while (true) {
      const auto pos = form.find(options.separator, start);
      const auto piece = form.substr(start, pos == std::string_view::npos
                                                ? std::string_view::npos
                                                : pos - start);
      if (piece.empty()) {
        throw DataError("form '" + std::string(form) + "' has an empty token");
      }
      tokens.emplace_back(piece);
      if (pos == std::string_view::npos) break;
      start = pos + options.separator.size();
    }
  } else {
    for (std::size_t i = 0; i < form.size();) {
      const std::size_t len =
          std::min(utf8_length(static_cast<unsigned char>(form[i])),
                   form.size() - i);
      tokens.emplace_back(form.substr(i, len));
      i += len;
    }
  }
  tokens.push_back(options.boundary);
  return tokens;
}

CueInventory::CueInventory(std::size_t n, TokenizerOptions options)
    : n_(n), options_(std::move(options)) {
  if (n_ < 1) throw ConfigError("gram order must be at least 1");
}

std::string CueInventory::key(const Tokens& cue) {
  std::string k;
  for (const auto& t : cue) {
    k += t;
    k.push_back('\x1f');
  }
  return k;
}

std::string CueInventory::display(std::size_t cue) const {
  const auto& toks = tokens(cue);
  const std::string sep = options_.tokenized ? options_.separator : "";
  std::string out;
  for (std::size_t i = 0; i < toks.size(); ++i) {
    if (i) out += sep;
    out += toks[i];
  }
  return out;
}

std::vector<std::string> CueInventory::displays() const {
  std::vector<std::string> out;
  out.reserve(size());
  for (std::size_t i = 0; i < size(); ++i) out.push_back(display(i));
  return out;
}

std::size_t CueInventory::intern(const Tokens& cue) {
  auto [it, inserted] = index_.try_emplace(key(cue), cues_.size());
  if (inserted) cues_.push_back(cue);
  return it->second;
}

std::size_t CueInventory::find(const Tokens& cue) const {
  auto it = index_.find(key(cue));
  return it == index_.end() ? npos : it->second;
}

bool CueInventory::starts_with_boundary(std::size_t cue) const {
  return tokens(cue).front() == options_.boundary;
}

bool CueInventory::ends_with_boundary(std::size_t cue) const {
  return tokens(cue).back() == options_.boundary;
}

std::string CueInventory::spell(const CueSequence& sequence) const {
  Tokens toks;
  for (std::size_t k = 0; k < sequence.size(); ++k) {
    const auto& cue = tokens(sequence[k]);
    const std::size_t from = k == 0 ? 0 : n_ - 1;
    for (std::size_t t = from; t < cue.size(); ++t) toks.push_back(cue[t]);
  }
  const std::string sep = options_.tokenized ? options_.separator : "";
  std::string out;
  bool first = true;
  for (const auto& t : toks) {
    if (t == options_.boundary) continue;
    if (!first) out += sep;
    out += t;
    first = false;
  }
  return out;
}

std::size_t CueMatrix::max_sequence_length() const {
  std::size_t m = 0;
  for (const auto& s : sequences) m = std::max(m, s.size());
  return m;
}

CueObjects build_cue_matrix(const Dataset& dataset, std::size_t n,
                            const TokenizerOptions& options) {
  return build_cue_matrix(dataset.forms(), n, options);
}

CueObjects build_cue_matrix(const std::vector<std::string>& forms,
                            std::size_t n, const TokenizerOptions& options) {
  CueObjects out{CueInventory(n, options), CueMatrix{}};
  auto& inv = out.inventory;
  const std::size_t min_tokens = std::max<std::size_t>(1, n >= 2 ? n - 2 : 0);

  std::vector<Eigen::Triplet<double>> entries;
  out.cues.sequences.reserve(forms.size());
  for (std::size_t i = 0; i < forms.size(); ++i) {
    Tokens toks;
    try {
      toks = tokenize_form(forms[i], options);
    } catch (const Error& e) {
      throw DataError(std::string(e.what()) + " (row " +
                      std::to_string(i + 1) + ")");
    }
    if (toks.size() - 2 < min_tokens) {
      throw DataError("form '" + forms[i] + "' at row " +
                      std::to_string(i + 1) + " is too short for " +
                      std::to_string(n) + "-grams");
    }
    CueSequence seq;
    for (std::size_t k = 0; k + n <= toks.size(); ++k) {
      Tokens cue(toks.begin() + static_cast<std::ptrdiff_t>(k),
                 toks.begin() + static_cast<std::ptrdiff_t>(k + n));
      seq.push_back(inv.intern(cue));
    }
    CueSequence distinct = seq;
    std::sort(distinct.begin(), distinct.end());
    distinct.erase(std::unique(distinct.begin(), distinct.end()),
                   distinct.end());
    for (auto c : distinct) {
      entries.emplace_back(static_cast<int>(i), static_cast<int>(c), 1.0);
    }
    out.cues.sequences.push_back(std::move(seq));
  }
  out.cues.matrix.resize(static_cast<Eigen::Index>(forms.size()),
                         static_cast<Eigen::Index>(inv.size()));
  out.cues.matrix.setFromTriplets(entries.begin(), entries.end());
  out.cues.matrix.makeCompressed();
  return out;
}

Adjacency adjacency(const CueInventory& inventory) {
  const std::size_t n = inventory.n();
  const std::size_t overlap = n - 1;
  // Bucket cues by their leading n-1 tokens.
  std::unordered_map<std::string, std::vector<std::size_t>> by_prefix;
  auto join = [](const Tokens& t, std::size_t from, std::size_t to) {
    std::string k;
    for (std::size_t i = from; i < to; ++i) {
      k += t[i];
      k.push_back('\x1f');
    }
    return k;
  };
  for (std::size_t c = 0; c < inventory.size(); ++c) {
    by_prefix[join(inventory.tokens(c), 0, overlap)].push_back(c);
  }
  // The boundary never occurs word-internally: word-final cues have no
  // successors and word-initial cues are never successors.
  Adjacency succ(inventory.size());
  for (std::size_t c = 0; c < inventory.size(); ++c) {
    if (inventory.ends_with_boundary(c)) continue;
    const auto& t = inventory.tokens(c);
    auto it = by_prefix.find(join(t, t.size() - overlap, t.size()));
    if (it == by_prefix.end()) continue;
    for (auto b : it->second) {
      if (!inventory.starts_with_boundary(b)) succ[c].push_back(b);
    }
  }
  return succ;
}

void write_inventory(const CueInventory& inventory,
                     const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw DataError("cannot write '" + path.string() + "'");
  for (std::size_t c = 0; c < inventory.size(); ++c) {
    out << inventory.display(c) << '\n';
  }
}

void write_matrix_market(const SparseRowMatrix& matrix,
                         const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw DataError("cannot write '" + path.string() + "'");
  out << "%%MatrixMarket matrix coordinate pattern general\n";
  out << matrix.rows() << ' ' << matrix.cols() << ' ' << matrix.nonZeros()
      << '\n';
  for (Eigen::Index i = 0; i < matrix.outerSize(); ++i) {
    for (SparseRowMatrix::InnerIterator it(matrix, i); it; ++it) {
      out << it.row() + 1 << ' ' << it.col() + 1 << '\n';
    }
  }
}

SparseRowMatrix read_matrix_market(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open '" + path.string() + "'");
  std::string line;
  std::getline(in, line);
  if (line.rfind("%%MatrixMarket matrix coordinate", 0) != 0) {
    throw DataError(path.string() + ": not a Matrix Market coordinate file");
  }
  const bool pattern = line.find("pattern") != std::string::npos;
  while (std::getline(in, line) && !line.empty() && line[0] == '%') {
  }
  long rows = 0, cols = 0, nnz = 0;
  {
    std::istringstream hdr(line);
    if (!(hdr >> rows >> cols >> nnz)) {
      throw DataError(path.string() + ": bad size line");
    }
  }
  std::vector<Eigen::Triplet<double>> entries;
  entries.reserve(static_cast<std::size_t>(nnz));
  for (long k = 0; k < nnz; ++k) {
    long r = 0, c = 0;
    double v = 1.0;
    if (!(in >> r >> c) || (!pattern && !(in >> v))) {
      throw DataError(path.string() + ": truncated entries");
    }
    if (r < 1 || r > rows || c < 1 || c > cols) {
      throw DataError(path.string() + ": entry out of range");
    }
    entries.emplace_back(static_cast<int>(r - 1), static_cast<int>(c - 1), v);
  }
  SparseRowMatrix m(rows, cols);
  m.setFromTriplets(entries.begin(), entries.end());
  m.makeCompressed();
  return m;
}

}  // namespace ldl
