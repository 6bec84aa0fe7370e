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

// Fits the whole model on an in-memory dataset.

#pragma once

#include <string>
#include <vector>

#include "ldl/cues.hpp"
#include "ldl/dataset.hpp"
#include "ldl/linear_map.hpp"
#include "ldl/paths.hpp"
#include "ldl/semantics.hpp"

namespace fixture {

struct Fitted {
  ldl::CueObjects cues;
  ldl::SemanticMatrix space;
  ldl::LinearMap f;
  ldl::LinearMap g;
};

struct Setup {
  std::size_t n = 2;
  bool tokenized = false;
  std::string separator = "_";
  std::string lexeme_column = "Lexeme";
  std::vector<std::string> feature_columns;
  long dims = 0;  // 0: cue count
  std::uint64_t seed = 1;
  double sd = 1.0;
};

Fitted fit(const ldl::Dataset& dataset, const Setup& setup);
// Cues from `setup`, semantics given.
Fitted fit_with(const ldl::Dataset& dataset, const Setup& setup, ldl::SemanticMatrix space);

struct Accuracies {
  double comprehension = 0.0;
  double production = 0.0;
};
Accuracies evaluate(const ldl::Dataset& dataset, const Fitted& fitted,
                    const ldl::DecoderOptions& options = {});

}  // namespace fixture
