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

#include "fixture.hpp"

#include "ldl/evaluation.hpp"

namespace fixture {

namespace {

ldl::CueObjects cues_for(const ldl::Dataset& dataset, const Setup& setup) {
  ldl::TokenizerOptions tok;
  tok.tokenized = setup.tokenized;
  tok.separator = setup.separator;
  return ldl::build_cue_matrix(dataset, setup.n, tok);
}

}  // namespace

Fitted fit_with(const ldl::Dataset& dataset, const Setup& setup, ldl::SemanticMatrix space) {
  ldl::CueObjects cues = cues_for(dataset, setup);
  ldl::LinearMap f = ldl::comprehension_map(cues.cues, space);
  ldl::LinearMap g = ldl::production_map(space, cues.cues);
  return Fitted{std::move(cues), std::move(space), std::move(f), std::move(g)};
}

Fitted fit(const ldl::Dataset& dataset, const Setup& setup) {
  ldl::CueObjects cues = cues_for(dataset, setup);
  ldl::SimulationOptions sim;
  sim.lexeme_column = setup.lexeme_column;
  sim.feature_columns = setup.feature_columns;
  sim.dims = setup.dims > 0 ? setup.dims : static_cast<Eigen::Index>(cues.inventory.size());
  sim.seed = setup.seed;
  sim.sd = setup.sd;
  ldl::SemanticMatrix space = ldl::simulate_semantics(dataset, sim);
  ldl::LinearMap f = ldl::comprehension_map(cues.cues, space);
  ldl::LinearMap g = ldl::production_map(space, cues.cues);
  return Fitted{std::move(cues), std::move(space), std::move(f), std::move(g)};
}

Accuracies evaluate(const ldl::Dataset& dataset, const Fitted& fitted,
                    const ldl::DecoderOptions& options) {
  Accuracies out;
  const Eigen::MatrixXd s_hat = ldl::apply_map(fitted.cues.cues.matrix, fitted.f);
  out.comprehension =
      ldl::eval_sc(s_hat, fitted.space.values(), dataset.forms(), false).accuracy;
  const auto positional = ldl::fit_positional(fitted.space, fitted.cues.cues);
  const auto decoded =
      ldl::learn_paths(fitted.cues, fitted.space, fitted.f, positional, options);
  out.production =
      ldl::eval_production(decoded.paths.ranked_sequences(), fitted.cues.cues.sequences);
  return out;
}

}  // namespace fixture
