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

#include <omp.h>

#include <cmath>

#include "common.hpp"
#include "ldl/errors.hpp"
#include "ldl/evaluation.hpp"
#include "ldl/kernels.hpp"
#include "oracles.hpp"

using testutil::gaussian;

TEST_SUITE("evaluation") {

TEST_CASE("pearson") {
  const Eigen::Vector3d u(1, 2, 3);
  CHECK(ldl::pearson(u, u) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(ldl::pearson(u, -u) == doctest::Approx(-1.0).epsilon(1e-15));
  const Eigen::Vector3d v(1, 2, 4);
  // (x - 2) . (y - 7/3) / sqrt(2 * 14/3)
  const double expected = 3.0 / std::sqrt(2.0 * 14.0 / 3.0);
  CHECK(std::abs(ldl::pearson(u, v) - expected) < 1e-15);
  CHECK(ldl::pearson(u, v) == doctest::Approx(0.98198).epsilon(1e-5));
  CHECK_THROWS_AS(ldl::pearson(u, Eigen::Vector3d(2, 2, 2)), ldl::DataError);
  CHECK_THROWS_AS(ldl::pearson(u, Eigen::Vector2d(1, 2)), ldl::DataError);
}

TEST_CASE("perfect predictions") {
  const Eigen::MatrixXd s = gaussian(12, 6, 1);
  std::vector<std::string> forms;
  for (int i = 0; i < 12; ++i) forms.push_back("w" + std::to_string(i));
  const auto r = ldl::eval_sc(s, s, forms);
  CHECK(r.accuracy == 1.0);
  REQUIRE(r.r.has_value());
  for (int i = 0; i < 12; ++i) CHECK((*r.r)(i, i) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(r.r->maxCoeff() <= 1.0);
  CHECK(r.r->minCoeff() >= -1.0);
  CHECK_FALSE(ldl::eval_sc(s, s, forms, false).r.has_value());
}

TEST_CASE("homophones whose predictions swap both count") {
  Eigen::MatrixXd s(3, 4), s_hat(3, 4);
  s << 1, 2, 3, 4, 4, 1, 3, 2, 2, 4, 1, 3;
  s_hat << 4, 1, 3, 2.1, 1, 2, 3, 4.1, 2, 4, 1, 3.1;
  const auto ref = oracle::correlations(s_hat, s);
  CHECK(ref(0, 1) > ref(0, 0));
  CHECK(ref(1, 0) > ref(1, 1));
  const auto r = ldl::eval_sc(s_hat, s, {"ba", "ba", "ko"});
  CHECK(r.best == std::vector<Eigen::Index>{1, 0, 2});
  CHECK(r.accuracy == 1.0);
  // Without the shared form the swap costs two words.
  CHECK(ldl::eval_sc(s_hat, s, {"ba", "be", "ko"}).accuracy == doctest::Approx(1.0 / 3.0));
}

TEST_CASE("ties go to the lowest gold row") {
  Eigen::MatrixXd s(3, 3);
  s << 1, 2, 3, 1, 2, 3, 3, 1, 2;
  const auto r = ldl::eval_sc(s, s, {"a", "b", "c"});
  CHECK(r.best == std::vector<Eigen::Index>{0, 0, 2});
  CHECK(r.accuracy == doctest::Approx(2.0 / 3.0));
}

TEST_CASE("zero-variance rows are named") {
  Eigen::MatrixXd s = gaussian(3, 4, 2);
  Eigen::MatrixXd s_hat = s;
  s_hat.row(1).setConstant(0.5);
  CHECK_THROWS_WITH_AS(ldl::eval_sc(s_hat, s, {"a", "b", "c"}), doctest::Contains("row 2"),
                       ldl::DataError);
  CHECK_THROWS_AS(ldl::eval_sc(s, gaussian(3, 5, 1), {"a", "b", "c"}), ldl::DataError);
  CHECK_THROWS_AS(ldl::eval_sc(s, s, {"a", "b"}), ldl::DataError);
}

TEST_CASE("brute-force agreement on random lexicons") {
  for (std::uint64_t seed = 1; seed <= 30; ++seed) {
    const int n = 3 + static_cast<int>(seed * 7 % 48);
    const Eigen::MatrixXd s = gaussian(n, 10, seed);
    const Eigen::MatrixXd s_hat = s + 1.5 * gaussian(n, 10, seed + 1000);
    std::vector<std::string> forms;
    for (int i = 0; i < n; ++i) forms.push_back("f" + std::to_string(seed % 4 == 0 ? i / 3 : i));
    const auto lib = ldl::eval_sc(s_hat, s, forms);
    const auto ref = oracle::comprehension(s_hat, s, forms);
    CHECK(lib.accuracy == ref.accuracy);
    for (int i = 0; i < n; ++i) CHECK(static_cast<std::size_t>(lib.best[static_cast<std::size_t>(i)]) == ref.best[static_cast<std::size_t>(i)]);
    CHECK(testutil::max_abs_diff(*lib.r, oracle::correlations(s_hat, s)) < 1e-12);
  }
}

TEST_CASE("positive affine rescaling of predictions changes nothing") {
  const Eigen::MatrixXd s = gaussian(20, 8, 3);
  const Eigen::MatrixXd s_hat = s + gaussian(20, 8, 4);
  Eigen::MatrixXd scaled = s_hat;
  for (Eigen::Index i = 0; i < scaled.rows(); ++i) {
    scaled.row(i) = scaled.row(i) * (0.5 + static_cast<double>(i)) +
                    Eigen::RowVectorXd::Constant(8, static_cast<double>(i) - 7.0);
  }
  std::vector<std::string> forms;
  for (int i = 0; i < 20; ++i) forms.push_back(std::to_string(i));
  const auto a = ldl::eval_sc(s_hat, s, forms);
  const auto b = ldl::eval_sc(scaled, s, forms);
  CHECK(testutil::max_abs_diff(*a.r, *b.r) < 1e-12);
  CHECK(a.accuracy == b.accuracy);
}

TEST_CASE("production accuracy") {
  const std::vector<ldl::CueSequence> gold = {{0, 1, 2}, {3, 4}, {0, 5}};
  CHECK(ldl::eval_production({{{0, 1, 2}}, {{3, 4}, {0}}, {{0, 5}}}, gold) == 1.0);
  CHECK(ldl::eval_production({{{0, 1}, {0, 1, 2}}, {}, {{0, 5}}}, gold) ==
        doctest::Approx(1.0 / 3.0));
  CHECK(ldl::eval_production({{}, {}, {}}, gold) == 0.0);
  CHECK_THROWS_AS(ldl::eval_production({{}}, gold), ldl::DataError);
}

TEST_CASE("correlation CSV has form headers") {
  testutil::TempDir dir("eval");
  Eigen::MatrixXd r(2, 2);
  r << 1, 0.5, 0.25, 1;
  ldl::write_correlations_csv(r, {"a,b", "c"}, dir / "R.csv");
  CHECK(testutil::read_text(dir / "R.csv") == "word,\"a,b\",c\n\"a,b\",1,0.5\nc,0.25,1\n");
}

}  // TEST_SUITE

TEST_SUITE("kernels") {

TEST_CASE("blocked correlation equals the reference double loop") {
  const Eigen::MatrixXd a = gaussian(150, 17, 1);
  const Eigen::MatrixXd b = gaussian(90, 17, 2);
  const Eigen::MatrixXd ref = ldl::kernels::reference::correlation_matrix(a, b);
  CHECK(testutil::max_abs_diff(ldl::kernels::correlation_matrix(a, b, ldl::Execution::serial),
                               ref) < 1e-13);
  CHECK(testutil::max_abs_diff(ref, oracle::correlations(a, b)) < 1e-13);
}

TEST_CASE("parallel results are bitwise identical to serial") {
  const int saved = omp_get_max_threads();
  omp_set_num_threads(4);
  const Eigen::MatrixXd a = gaussian(300, 40, 3);
  const Eigen::MatrixXd b = gaussian(257, 40, 4);
  const Eigen::MatrixXd serial = ldl::kernels::correlation_matrix(a, b, ldl::Execution::serial);
  const Eigen::MatrixXd parallel =
      ldl::kernels::correlation_matrix(a, b, ldl::Execution::parallel);
  CHECK(serial == parallel);
  const auto ms = ldl::kernels::correlation_argmax(a, b, ldl::Execution::serial);
  const auto mp = ldl::kernels::correlation_argmax(a, b, ldl::Execution::parallel);
  CHECK(ms.index == mp.index);
  CHECK(ms.value == mp.value);
  CHECK(ms.index == ldl::kernels::row_argmax(serial).index);
  omp_set_num_threads(saved);
}

TEST_CASE("exceptions inside parallel loops reach the caller") {
  const int saved = omp_get_max_threads();
  omp_set_num_threads(4);
  CHECK_THROWS_AS(ldl::kernels::for_each_index(100, ldl::Execution::parallel,
                                               [](Eigen::Index i) {
                                                 if (i == 37) throw ldl::DataError("boom");
                                               }),
                  ldl::DataError);
  omp_set_num_threads(saved);
}

TEST_CASE("standardize_rows rejects constant rows") {
  Eigen::MatrixXd m = gaussian(3, 5, 5);
  m.row(2).setConstant(3.0);
  CHECK_THROWS_WITH_AS(ldl::kernels::standardize_rows(m, "S"), doctest::Contains("row 3"),
                       ldl::DataError);
}

}  // TEST_SUITE
