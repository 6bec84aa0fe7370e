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

#pragma once

#include <exception>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

// Data-parallel kernels. Each has an OpenMP implementation whose output is
// independent of the thread count (work is split on fixed row blocks), and
// a plain serial reference under kernels::reference used by the tests.
namespace ldl {

enum class Execution { serial, parallel };

namespace kernels {

// Rows per block for blocked products. Part of the numerical contract:
// changing it may change results in the last bits.
inline constexpr Eigen::Index kRowBlock = 64;

// Centers each row and scales it to unit norm. Throws DataError naming the
// first zero-variance row.
Eigen::MatrixXd standardize_rows(const Eigen::MatrixXd& m,
                                 std::string_view what);

// R(i, j) = r(a_i, b_j) over all row pairs.
Eigen::MatrixXd correlation_matrix(const Eigen::MatrixXd& a,
                                   const Eigen::MatrixXd& b,
                                   Execution exec = Execution::parallel);

struct RowMax {
  std::vector<Eigen::Index> index;  // lowest column index among ties
  std::vector<double> value;
};

// Row-wise argmax of correlation_matrix(a, b) without materializing it.
RowMax correlation_argmax(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b,
                          Execution exec = Execution::parallel);

RowMax row_argmax(const Eigen::MatrixXd& r);

// Number of threads an OpenMP region would use right now (1 without OpenMP).
int max_threads();

// Runs body(i) for i in [0, n). Iterations must write disjoint state. The
// first exception thrown by any iteration is rethrown on the caller's
// thread once the loop has finished.
template <typename Body>
void for_each_index(Eigen::Index n, Execution exec, Body&& body) {
  std::exception_ptr error;
#pragma omp parallel for schedule(dynamic) if (exec == Execution::parallel)
  for (Eigen::Index i = 0; i < n; ++i) {
    try {
      body(i);
    } catch (...) {
#pragma omp critical(ldl_for_each_index)
      if (!error) error = std::current_exception();
    }
  }
  if (error) std::rethrow_exception(error);
}

namespace reference {

double pearson(const Eigen::Ref<const Eigen::VectorXd>& u,
               const Eigen::Ref<const Eigen::VectorXd>& v);

// Double loop over pearson(); O(n^2 d) with no blocking.
Eigen::MatrixXd correlation_matrix(const Eigen::MatrixXd& a,
                                   const Eigen::MatrixXd& b);

}  // namespace reference
}  // namespace kernels
}  // namespace ldl
