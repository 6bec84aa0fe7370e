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

#include <doctest.h>

#include <sys/wait.h>

#include <cstdlib>
#include <random>
#include <set>

#include "common.hpp"
#include "generators.hpp"
#include "ldl/config.hpp"
#include "ldl/errors.hpp"
#include "ldl/pipeline.hpp"

namespace fs = std::filesystem;
using testutil::TempDir;
using testutil::read_text;
using testutil::write_text;

namespace {

ldl::RunConfig toy_config(const TempDir& dir) {
  ldl::RunConfig c;
  ldl::apply_known_settings(c, ldl::read_key_values(testutil::data_path("toy_run.cfg")));
  c.dataset = testutil::data_path("toy.csv");
  c.output = dir / "out";
  return c;
}

std::string manifest_value(const fs::path& dir, const std::string& key) {
  for (const auto& [k, v] : ldl::read_key_values(dir / "manifest.txt")) {
    if (k == key) return v;
  }
  return "<absent>";
}

int run_cli(const fs::path& cwd, const std::string& args) {
  const std::string cmd =
      "cd '" + cwd.string() + "' && '" LDL_CLI_PATH "' " + args + " > cli.log 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

// Tokenized two- and three-syllable words with random embeddings.
ldl::Dataset mandarin_like(std::size_t words, std::uint64_t seed) {
  const std::vector<std::string> syl = {"tu3", "di4", "i1", "x", "ia4", "ma1", "ba2",
                                        "zh", "ong1", "guo2", "ren2", "shi4", "jie4"};
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::size_t> pick(0, syl.size() - 1);
  std::uniform_int_distribution<int> len(2, 3);
  std::set<std::string> seen;
  std::vector<ldl::WordRecord> rows;
  while (rows.size() < words) {
    std::string w;
    for (int k = len(rng); k > 0; --k) w += (w.empty() ? "" : ".") + syl[pick(rng)];
    if (seen.insert(w).second) rows.push_back({w, {w}});
  }
  return ldl::Dataset({"Word"}, "Word", std::move(rows));
}

}  // namespace

TEST_SUITE("config") {

TEST_CASE("key-value parsing") {
  const auto kv = ldl::parse_key_values("# comment\n  grams = 3 \n\nseparator=.\n");
  REQUIRE(kv.size() == 2);
  CHECK(kv[0] == std::pair<std::string, std::string>{"grams", "3"});
  CHECK(kv[1] == std::pair<std::string, std::string>{"separator", "."});
  CHECK_THROWS_AS(ldl::parse_key_values("no equals sign\n"), ldl::ConfigError);
}

TEST_CASE("settings and validation") {
  ldl::RunConfig c;
  ldl::apply_setting(c, "feature_columns", "A, B");
  CHECK(c.feature_columns == std::vector<std::string>{"A", "B"});
  ldl::apply_setting(c, "tokenized", "true");
  CHECK(c.tokenized);
  CHECK_THROWS_AS(ldl::apply_setting(c, "grams", "two"), ldl::ConfigError);
  CHECK_THROWS_AS(ldl::apply_setting(c, "tokenized", "maybe"), ldl::ConfigError);
  CHECK_THROWS_AS(ldl::apply_setting(c, "colour", "red"), ldl::ConfigError);

  ldl::RunConfig v;
  CHECK_THROWS_AS(ldl::validate(v), ldl::ConfigError);  // no dataset
  v.dataset = "x.csv";
  CHECK_THROWS_AS(ldl::validate(v), ldl::ConfigError);  // no semantic source
  v.lexeme_column = "Lexeme";
  CHECK_NOTHROW(ldl::validate(v));
  v.embeddings = "S.txt";
  CHECK_THROWS_AS(ldl::validate(v), ldl::ConfigError);  // both sources
  v.lexeme_column.clear();
  CHECK_NOTHROW(ldl::validate(v));
  v.threshold = 0.0;
  CHECK_THROWS_AS(ldl::validate(v), ldl::ConfigError);
}

TEST_CASE("config keys survive a write and reread") {
  ldl::RunConfig c;
  c.dataset = "d.csv";
  c.lexeme_column = "Lexeme";
  c.feature_columns = {"A", "B"};
  c.grams = 3;
  c.threshold = 0.01;
  c.seed = 12345678901234ULL;
  std::string text;
  for (const auto& [k, v] : ldl::to_key_values(c)) text += k + " = " + v + "\n";
  ldl::RunConfig back;
  ldl::apply_known_settings(back, ldl::parse_key_values(text));
  CHECK(ldl::to_key_values(back) == ldl::to_key_values(c));
}

}  // TEST_SUITE

TEST_SUITE("cli") {

TEST_CASE("fit writes artifacts whose re-evaluation matches the manifest") {
  TempDir dir("pipe");
  const auto config = toy_config(dir);
  const auto summary = ldl::run_fit(config);
  CHECK(summary.comprehension_accuracy == 1.0);
  CHECK(summary.production_accuracy == 1.0);
  for (const char* f : {"cues.txt", "C.mtx", "S.txt", "lexomes.txt", "F.bin", "F.txt", "G.bin",
                        "G.txt", "manifest.txt"}) {
    CHECK_MESSAGE(fs::exists(config.output / f), f);
  }
  CHECK(manifest_value(config.output, "comprehension_accuracy") == "1");
  CHECK(manifest_value(config.output, "cue_count") == "8");
  CHECK(manifest_value(config.output, "semantic_dims") == "8");
  CHECK(manifest_value(config.output, "decoder_max_length") == "6");
  CHECK(manifest_value(config.output, "decoder_top_k") == "10");
  CHECK(manifest_value(config.output, "sd") == "4");

  const auto reread = ldl::config_from_manifest(config.output);
  CHECK(ldl::to_key_values(reread) == ldl::to_key_values(config));
  CHECK(ldl::run_evaluate(reread) ==
        std::stod(manifest_value(config.output, "comprehension_accuracy")));
  CHECK(ldl::run_produce(reread) ==
        std::stod(manifest_value(config.output, "production_accuracy")));
}

TEST_CASE("toy measures match the independent reference") {
  TempDir dir("pipe");
  const auto config = toy_config(dir);
  ldl::run_fit(config);
  ldl::run_measures(config);
  CHECK_FALSE(fs::exists(config.output / "pta.csv"));
  CHECK(fs::exists(config.output / "projection.csv"));
  CHECK(fs::exists(config.output / "functional_load.csv"));

  // Reference values were computed outside this code base from the exported
  // S with a NumPy pseudo-inverse.
  const auto reference = ldl::load_dataset(testutil::data_path("toy_measures_reference.csv"), "word");
  const auto produced = ldl::load_dataset(config.output / "measures.csv", "word");
  REQUIRE(produced.row_count() == 4);
  for (std::size_t i = 0; i < 4; ++i) {
    CHECK(produced.form(i) == reference.form(i));
    for (const char* col : {"distance_travelled", "total_support"}) {
      CHECK(std::stod(produced.value(i, col)) ==
            doctest::Approx(std::stod(reference.value(i, col))).epsilon(1e-10));
    }
  }
}

TEST_CASE("pair lists") {
  TempDir dir("pipe");
  auto config = toy_config(dir);
  ldl::run_fit(config);
  write_text(dir / "pairs.csv", "prime,target\ntriz,tri\nbi,biz\ntriz,tri\n");
  config.pairs = dir / "pairs.csv";
  ldl::run_measures(config);
  const auto pta = ldl::load_dataset(config.output / "pta.csv", "prime");
  REQUIRE(pta.row_count() == 3);
  CHECK(pta.value(0, "pta") == pta.value(2, "pta"));
  CHECK(pta.value(0, "target") == "tri");

  write_text(dir / "bad_pairs.csv", "prime,target\ntriz,dog\n");
  config.pairs = dir / "bad_pairs.csv";
  fs::remove(config.output / "measures.csv");
  CHECK_THROWS_WITH_AS(ldl::run_measures(config), doctest::Contains("dog"), ldl::DataError);
  CHECK_FALSE(fs::exists(config.output / "measures.csv"));
}

TEST_CASE("empty dataset fails cleanly without artifacts") {
  TempDir dir("pipe");
  write_text(dir / "empty.csv", "Word,Lexeme,Number\n");
  auto config = toy_config(dir);
  config.dataset = dir / "empty.csv";
  CHECK_THROWS_WITH_AS(ldl::run_fit(config), doctest::Contains("empty"), ldl::DataError);
  CHECK_FALSE(fs::exists(config.output));
}

TEST_CASE("later steps need fitted artifacts") {
  TempDir dir("pipe");
  const auto config = toy_config(dir);
  CHECK_THROWS_WITH_AS(ldl::run_evaluate(config), doctest::Contains("run fit first"), ldl::DataError);
  ldl::run_fit(config);
  fs::remove(config.output / "G.bin");
  CHECK_THROWS_AS(ldl::run_measures(config), ldl::DataError);
}

TEST_CASE("Korean-style tokenized run") {
  TempDir dir("pipe");
  ldl::write_dataset(gen::korean_analog(8, 30), dir / "korean.csv");
  ldl::RunConfig c;
  c.dataset = dir / "korean.csv";
  c.lexeme_column = "Lexeme";
  c.feature_columns = {"Honorifics", "Tense", "SpeechLevel", "IllocutionaryForce"};
  c.tokenized = true;
  c.separator = "_";
  c.grams = 2;
  c.output = dir / "out";
  const auto summary = ldl::run_fit(c);
  CHECK(summary.comprehension_accuracy >= 0.95);
  CHECK(manifest_value(c.output, "comprehension_accuracy") != "<absent>");
  CHECK(read_text(c.output / "cues.txt").rfind("#_", 0) == 0);
}

TEST_CASE("Mandarin-style run with loaded embeddings") {
  TempDir dir("pipe");
  const auto ds = mandarin_like(60, 8);
  ldl::write_dataset(ds, dir / "mandarin.csv");
  ldl::write_embeddings(dir / "emb.txt", ds.forms(), testutil::gaussian(60, 40, 2));
  ldl::RunConfig c;
  c.dataset = dir / "mandarin.csv";
  c.embeddings = dir / "emb.txt";
  c.tokenized = true;
  c.separator = ".";
  c.grams = 3;
  c.threshold = 0.01;
  c.output = dir / "out";
  ldl::run_fit(c);
  CHECK(manifest_value(c.output, "comprehension_accuracy") != "<absent>");
  CHECK(manifest_value(c.output, "production_accuracy") != "<absent>");
  CHECK(manifest_value(c.output, "threshold") == "0.01");
  CHECK_FALSE(fs::exists(c.output / "lexomes.txt"));
  ldl::run_measures(c);
  CHECK_FALSE(fs::exists(c.output / "functional_load.csv"));
  CHECK(fs::exists(c.output / "projection.csv"));
}

TEST_CASE("simulate-semantics alone") {
  TempDir dir("pipe");
  auto c = toy_config(dir);
  c.dims = 5;
  ldl::run_simulate(c);
  const auto back = ldl::load_embeddings(c.output / "S.txt", gen::toy().forms());
  CHECK(back.cols() == 5);
  CHECK(fs::exists(c.output / "lexomes.txt"));
}

TEST_CASE("command-line driver") {
  TempDir dir("cli");
  const auto data = testutil::data_path("toy.csv").string();
  const auto cfg = testutil::data_path("toy_run.cfg").string();
  CHECK(run_cli(dir.path(), "fit --config '" + cfg + "' --dataset '" + data + "' --output out") == 0);
  CHECK(read_text(dir / "cli.log") == "comprehension_accuracy 1\nproduction_accuracy 1\n");
  // Later subcommands pick up the fitted configuration from the manifest.
  CHECK(run_cli(dir.path(), "measures --output out") == 0);
  CHECK(fs::exists(dir / "out" / "measures.csv"));
  CHECK(run_cli(dir.path(), "produce --output out --threshold 0.05") == 0);
  CHECK(read_text(dir / "cli.log") == "production_accuracy 1\n");
  CHECK(run_cli(dir.path(), "project --output out") == 0);
  CHECK(run_cli(dir.path(), "evaluate --output out --write-correlations") == 0);
  CHECK(fs::exists(dir / "out" / "R.csv"));

  // Flags override the config file.
  CHECK(run_cli(dir.path(), "fit --config '" + cfg + "' --dataset '" + data +
                                "' --output out2 --seed 9 --dims 6") == 0);
  CHECK(manifest_value(dir / "out2", "seed") == "9");
  CHECK(manifest_value(dir / "out2", "semantic_dims") == "6");

  // Exit codes.
  CHECK(run_cli(dir.path(), "fit --dataset '" + data + "' --output bad") == 2);
  CHECK(run_cli(dir.path(), "fit --dataset nowhere.csv --lexeme-column Lexeme --output bad") == 3);
  CHECK(run_cli(dir.path(), "fit --no-such-flag") == 2);
  CHECK(run_cli(dir.path(), "") == 2);
  CHECK(run_cli(dir.path(), "evaluate --output never_fitted --dataset '" + data +
                                "' --lexeme-column Lexeme") == 3);
  CHECK(run_cli(dir.path(), "fit --dataset '" + data + "' --lexeme-column Lexeme --ridge -1") == 2);
}

}  // TEST_SUITE
