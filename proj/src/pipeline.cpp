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

#include "ldl/pipeline.hpp"

#include <fstream>
#include <iostream>
#include <unordered_map>

#include "ldl/errors.hpp"
#include "ldl/evaluation.hpp"
#include "ldl/measures.hpp"

namespace ldl {

namespace fs = std::filesystem;

namespace {

constexpr const char* kManifest = "manifest.txt";

SolverOptions solver_options(const RunConfig& config) {
  SolverOptions o;
  o.ridge = config.ridge;
  return o;
}

void ensure_dir(const fs::path& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw DataError("cannot create '" + dir.string() + "': " + ec.message());
}

const char* solver_name(Solver s) {
  return s == Solver::cholesky ? "cholesky" : "svd";
}

void write_manifest(const fs::path& path, const RunConfig& config,
                    const KeyValues& results) {
  std::ofstream out(path);
  if (!out) throw DataError("cannot write '" + path.string() + "'");
  out << "# ldl run manifest\n";
  for (const auto& [k, v] : to_key_values(config)) out << k << " = " << v << '\n';
  for (const auto& [k, v] : results) out << k << " = " << v << '\n';
}

Dataset read_dataset(const RunConfig& config) {
  Dataset ds = load_dataset(config.dataset, config.form_column);
  if (ds.empty()) throw DataError(config.dataset.string() + ": dataset is empty");
  return ds;
}

SemanticMatrix make_semantics(const RunConfig& config, const Dataset& dataset,
                              std::size_t cue_count) {
  if (config.simulated()) {
    SimulationOptions o;
    o.lexeme_column = config.lexeme_column;
    o.feature_columns = config.feature_columns;
    o.dims = config.dims > 0 ? config.dims : static_cast<long>(cue_count);
    o.seed = config.seed;
    o.sd = config.sd;
    return simulate_semantics(dataset, o);
  }
  SemanticMatrix s = load_semantics(config.embeddings, dataset);
  if (config.dims > 0 && s.dims() != config.dims) {
    throw ConfigError("dims = " + std::to_string(config.dims) +
                      " but the embeddings have " + std::to_string(s.dims()) +
                      " dimensions");
  }
  return s;
}

fs::path artifact(const RunConfig& config, const char* name) {
  return config.output / name;
}

fs::path existing_artifact(const RunConfig& config, const char* name) {
  auto p = artifact(config, name);
  if (!fs::exists(p)) {
    throw DataError("missing artifact '" + p.string() + "'; run fit first");
  }
  return p;
}

std::vector<std::string> read_lines(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open '" + path.string() + "'");
  std::vector<std::string> lines;
  std::string line;
  while (std::getline(in, line)) lines.push_back(line);
  return lines;
}

Decoding decode(const Model& model, const RunConfig& config) {
  const auto positional = fit_positional(model.space, model.cue_objects.cues,
                                         solver_options(config));
  return learn_paths(model.cue_objects, model.space, model.comprehension,
                     positional, decoder_options(config));
}

}  // namespace

TokenizerOptions tokenizer_options(const RunConfig& config) {
  TokenizerOptions o;
  o.tokenized = config.tokenized;
  o.separator = config.separator;
  o.boundary = config.boundary;
  return o;
}

DecoderOptions decoder_options(const RunConfig& config) {
  DecoderOptions o;
  o.threshold = config.threshold;
  o.max_length = config.max_length;
  o.top_k = config.top_k;
  return o;
}

Model build_model(const RunConfig& config) {
  validate(config);
  Dataset dataset = read_dataset(config);
  CueObjects cue_objects =
      build_cue_matrix(dataset, config.grams, tokenizer_options(config));
  SemanticMatrix space =
      make_semantics(config, dataset, cue_objects.inventory.size());
  LinearMap f = comprehension_map(cue_objects.cues, space, solver_options(config));
  LinearMap g = production_map(space, cue_objects.cues, solver_options(config));
  return Model{std::move(dataset), std::move(cue_objects), std::move(space),
               std::move(f), std::move(g)};
}

Model load_model(const RunConfig& config) {
  validate(config);
  Dataset dataset = read_dataset(config);
  CueObjects cue_objects =
      build_cue_matrix(dataset, config.grams, tokenizer_options(config));
  const auto stored = read_lines(existing_artifact(config, "cues.txt"));
  if (stored != cue_objects.inventory.displays()) {
    throw DataError("stored cue inventory does not match the dataset");
  }
  SemanticMatrix space =
      load_semantics(existing_artifact(config, "S.txt"), dataset);
  if (config.simulated()) {
    const auto lex = read_named_vectors(existing_artifact(config, "lexomes.txt"));
    SemanticMatrix sim(space.values(), SemanticSource::simulated);
    sim.seed = config.seed;
    sim.lexeme_column = config.lexeme_column;
    sim.feature_columns = config.feature_columns;
    sim.lexome_names = lex.names;
    for (std::size_t i = 0; i < lex.names.size(); ++i) {
      sim.lexomes[lex.names[i]] =
          lex.values.row(static_cast<Eigen::Index>(i)).transpose();
    }
    space = std::move(sim);
  }
  LinearMap f = load_map_binary(existing_artifact(config, "F.bin"));
  LinearMap g = load_map_binary(existing_artifact(config, "G.bin"));
  if (f.input_dims() != static_cast<Eigen::Index>(cue_objects.inventory.size()) ||
      f.output_dims() != space.dims() || g.input_dims() != space.dims() ||
      g.output_dims() != static_cast<Eigen::Index>(cue_objects.inventory.size())) {
    throw DataError("stored maps do not match the cue inventory or semantics");
  }
  return Model{std::move(dataset), std::move(cue_objects), std::move(space),
               std::move(f), std::move(g)};
}

RunConfig config_from_manifest(const fs::path& dir) {
  RunConfig config;
  apply_known_settings(config, read_key_values(dir / kManifest));
  return config;
}

FitSummary run_fit(const RunConfig& config) {
  const Model model = build_model(config);
  const auto forms = model.dataset.forms();
  const Eigen::MatrixXd s_hat =
      apply_map(model.cue_objects.cues.matrix, model.comprehension);
  const auto comp = eval_sc(s_hat, model.space.values(), forms, false);
  const Decoding decoded = decode(model, config);

  FitSummary summary;
  summary.comprehension_accuracy = comp.accuracy;
  summary.production_accuracy = eval_production(
      decoded.paths.ranked_sequences(), model.cue_objects.cues.sequences);
  summary.max_length = decoded.paths.max_length;

  ensure_dir(config.output);
  write_inventory(model.cue_objects.inventory, artifact(config, "cues.txt"));
  write_matrix_market(model.cue_objects.cues.matrix, artifact(config, "C.mtx"));
  write_embeddings(artifact(config, "S.txt"), forms, model.space.values());
  if (model.space.source() == SemanticSource::simulated) {
    write_lexomes(model.space, artifact(config, "lexomes.txt"));
  }
  save_map_binary(model.comprehension, artifact(config, "F.bin"));
  save_map_text(model.comprehension, artifact(config, "F.txt"));
  save_map_binary(model.production, artifact(config, "G.bin"));
  save_map_text(model.production, artifact(config, "G.txt"));

  const auto& f = model.comprehension;
  const auto& g = model.production;
  write_manifest(
      artifact(config, kManifest), config,
      {{"words", std::to_string(model.dataset.row_count())},
       {"cue_count", std::to_string(model.cue_objects.inventory.size())},
       {"semantic_dims", std::to_string(model.space.dims())},
       {"F_solver", solver_name(f.solver)},
       {"F_rank", std::to_string(f.rank)},
       {"F_fit_residual", format_double(f.fit_residual)},
       {"G_solver", solver_name(g.solver)},
       {"G_rank", std::to_string(g.rank)},
       {"G_fit_residual", format_double(g.fit_residual)},
       {"decoder_max_length", std::to_string(decoded.paths.max_length)},
       {"decoder_top_k", std::to_string(decoded.paths.top_k)},
       {"comprehension_accuracy", format_double(summary.comprehension_accuracy)},
       {"production_accuracy", format_double(summary.production_accuracy)}});
  return summary;
}

double run_evaluate(const RunConfig& config) {
  const Model model = load_model(config);
  const auto forms = model.dataset.forms();
  const Eigen::MatrixXd s_hat =
      apply_map(model.cue_objects.cues.matrix, model.comprehension);
  const auto result =
      eval_sc(s_hat, model.space.values(), forms, config.write_correlations);

  std::ofstream out(artifact(config, "comprehension.csv"));
  if (!out) throw DataError("cannot write comprehension.csv");
  out << "word,best_match,correct\n";
  for (std::size_t i = 0; i < forms.size(); ++i) {
    out << csv_escape(forms[i]) << ','
        << csv_escape(forms[static_cast<std::size_t>(result.best[i])]) << ','
        << (result.correct[i] ? "true" : "false") << '\n';
  }
  if (result.r) {
    write_correlations_csv(*result.r, forms, artifact(config, "R.csv"));
  }
  return result.accuracy;
}

double run_produce(const RunConfig& config) {
  const Model model = load_model(config);
  const auto forms = model.dataset.forms();
  const Decoding decoded = decode(model, config);
  write_paths_csv(decoded.paths, forms, model.cue_objects.inventory,
                  artifact(config, "paths.csv"));
  write_gold_paths_csv(decoded.gold, forms, artifact(config, "gold_paths.csv"));
  return eval_production(decoded.paths.ranked_sequences(),
                         model.cue_objects.cues.sequences);
}

void run_measures(const RunConfig& config) {
  const Model model = load_model(config);
  const auto forms = model.dataset.forms();

  // Resolve the pair list before writing anything.
  std::vector<PrimeTargetPair> pairs;
  std::vector<std::pair<std::size_t, std::size_t>> pair_rows;
  if (!config.pairs.empty()) {
    pairs = read_pairs_csv(config.pairs);
    std::unordered_map<std::string, std::size_t> row_of;
    for (std::size_t i = forms.size(); i-- > 0;) row_of[forms[i]] = i;
    for (const auto& p : pairs) {
      auto a = row_of.find(p.prime);
      auto b = row_of.find(p.target);
      if (a == row_of.end() || b == row_of.end()) {
        throw DataError("pair (" + p.prime + ", " + p.target +
                        ") references a word not in the dataset");
      }
      pair_rows.emplace_back(a->second, b->second);
    }
  }

  const Decoding decoded = decode(model, config);
  write_measures_csv(
      word_measures(model.production, model.cue_objects.cues, decoded.gold),
      forms, artifact(config, "measures.csv"));
  write_projection_csv(pca_project(model.production),
                       model.cue_objects.inventory,
                       artifact(config, "projection.csv"));
  if (model.space.source() == SemanticSource::simulated) {
    write_functional_load_csv(functional_load(model.production, model.space),
                              model.cue_objects.inventory,
                              model.space.lexome_names,
                              artifact(config, "functional_load.csv"));
  }
  if (!pairs.empty()) {
    const Eigen::MatrixXd s_hat =
        apply_map(model.cue_objects.cues.matrix, model.comprehension);
    const auto r = kernels::correlation_matrix(s_hat, model.space.values());
    std::vector<double> values;
    for (const auto& [prime, target] : pair_rows) {
      values.push_back(prime_target_approximation(r, prime, target));
    }
    write_pta_csv(pairs, values, artifact(config, "pta.csv"));
  }
}

void run_project(const RunConfig& config) {
  const Model model = load_model(config);
  write_projection_csv(pca_project(model.production),
                       model.cue_objects.inventory,
                       artifact(config, "projection.csv"));
}

void run_simulate(const RunConfig& config) {
  validate(config);
  if (!config.simulated()) {
    throw ConfigError("simulate-semantics needs lexeme_column");
  }
  const Dataset dataset = read_dataset(config);
  std::size_t cue_count = 0;
  if (config.dims == 0) {
    cue_count = build_cue_matrix(dataset, config.grams, tokenizer_options(config))
                    .inventory.size();
  }
  const SemanticMatrix space = make_semantics(config, dataset, cue_count);
  ensure_dir(config.output);
  write_embeddings(artifact(config, "S.txt"), dataset.forms(), space.values());
  write_lexomes(space, artifact(config, "lexomes.txt"));
}

}  // namespace ldl
