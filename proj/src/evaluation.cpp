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

#include "ldl/evaluation.hpp"

#include <fstream>

#include "ldl/dataset.hpp"
#include "ldl/errors.hpp"

namespace ldl {

double pearson(const Eigen::Ref<const Eigen::VectorXd>& u,
               const Eigen::Ref<const Eigen::VectorXd>& v) {
  return kernels::reference::pearson(u, v);
}

CorrelationResult eval_sc(const Eigen::MatrixXd& s_hat,
                          const Eigen::MatrixXd& s,
                          const std::vector<std::string>& forms, bool keep_r,
                          Execution exec) {
  if (s_hat.rows() != s.rows() || s_hat.cols() != s.cols()) {
    throw DataError("eval_sc: predicted and gold matrices differ in shape");
  }
  if (static_cast<Eigen::Index>(forms.size()) != s.rows()) {
    throw DataError("eval_sc: form list does not match the row count");
  }
  CorrelationResult out;
  kernels::RowMax best;
  if (keep_r) {
    out.r = kernels::correlation_matrix(s_hat, s, exec);
    best = kernels::row_argmax(*out.r);
  } else {
    best = kernels::correlation_argmax(s_hat, s, exec);
  }
  out.best = best.index;
  out.correct.resize(forms.size());
  std::size_t hits = 0;
  for (std::size_t i = 0; i < forms.size(); ++i) {
    out.correct[i] = forms[static_cast<std::size_t>(best.index[i])] == forms[i];
    hits += out.correct[i];
  }
  out.accuracy = forms.empty() ? 0.0
                               : static_cast<double>(hits) /
                                     static_cast<double>(forms.size());
  return out;
}

double eval_production(const std::vector<std::vector<CueSequence>>& decoded,
                       const std::vector<CueSequence>& gold) {
  if (decoded.size() != gold.size()) {
    throw DataError("eval_production: decoded and gold lists differ in size");
  }
  if (gold.empty()) return 0.0;
  std::size_t hits = 0;
  for (std::size_t i = 0; i < gold.size(); ++i) {
    hits += !decoded[i].empty() && decoded[i].front() == gold[i];
  }
  return static_cast<double>(hits) / static_cast<double>(gold.size());
}

void write_correlations_csv(const Eigen::MatrixXd& r,
                            const std::vector<std::string>& forms,
                            const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw DataError("cannot write '" + path.string() + "'");
  out << "word";
  for (const auto& f : forms) out << ',' << csv_escape(f);
  out << '\n';
  for (Eigen::Index i = 0; i < r.rows(); ++i) {
    out << csv_escape(forms[static_cast<std::size_t>(i)]);
    for (Eigen::Index j = 0; j < r.cols(); ++j) {
      out << ',' << format_double(r(i, j));
    }
    out << '\n';
  }
}

}  // namespace ldl
