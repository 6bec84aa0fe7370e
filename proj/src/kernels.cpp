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

#include "ldl/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "ldl/errors.hpp"

namespace ldl::kernels {

namespace {

// A centered vector counts as constant when its norm is negligible next to
// the raw vector's.
bool zero_variance(double centered_norm, double raw_norm) {
  return !(centered_norm > 1e-13 * raw_norm) || centered_norm == 0.0;
}

Eigen::Index block_count(Eigen::Index rows) {
  return (rows + kRowBlock - 1) / kRowBlock;
}

// Correlations of one fixed row block of `za` against every row of `zb`.
Eigen::MatrixXd block_product(const Eigen::MatrixXd& za,
                              const Eigen::MatrixXd& zb, Eigen::Index block) {
  const Eigen::Index begin = block * kRowBlock;
  const Eigen::Index len = std::min(kRowBlock, za.rows() - begin);
  Eigen::MatrixXd r = za.middleRows(begin, len) * zb.transpose();
  return r.cwiseMax(-1.0).cwiseMin(1.0);
}

void scan_block(const Eigen::MatrixXd& r, Eigen::Index begin, RowMax& out) {
  for (Eigen::Index i = 0; i < r.rows(); ++i) {
    Eigen::Index best = 0;
    double best_value = -std::numeric_limits<double>::infinity();
    for (Eigen::Index j = 0; j < r.cols(); ++j) {
      if (r(i, j) > best_value) {
        best_value = r(i, j);
        best = j;
      }
    }
    out.index[static_cast<std::size_t>(begin + i)] = best;
    out.value[static_cast<std::size_t>(begin + i)] = best_value;
  }
}

}  // namespace

int max_threads() {
#ifdef _OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

Eigen::MatrixXd standardize_rows(const Eigen::MatrixXd& m,
                                 std::string_view what) {
  Eigen::MatrixXd z = m;
  for (Eigen::Index i = 0; i < z.rows(); ++i) {
    const double raw = z.row(i).norm();
    z.row(i).array() -= z.row(i).mean();
    const double norm = z.row(i).norm();
    if (z.cols() < 2 || zero_variance(norm, raw)) {
      throw DataError("zero-variance row " + std::to_string(i + 1) + " in " +
                      std::string(what) + "; correlation is undefined");
    }
    z.row(i) /= norm;
  }
  return z;
}

Eigen::MatrixXd correlation_matrix(const Eigen::MatrixXd& a,
                                   const Eigen::MatrixXd& b, Execution exec) {
  if (a.cols() != b.cols()) {
    throw DataError("correlation_matrix: dimension mismatch");
  }
  const Eigen::MatrixXd za = standardize_rows(a, "predicted matrix");
  const Eigen::MatrixXd zb = standardize_rows(b, "gold matrix");
  Eigen::MatrixXd r(a.rows(), b.rows());
  const Eigen::Index blocks = block_count(a.rows());
#pragma omp parallel for schedule(static) if (exec == Execution::parallel)
  for (Eigen::Index k = 0; k < blocks; ++k) {
    const Eigen::MatrixXd part = block_product(za, zb, k);
    r.middleRows(k * kRowBlock, part.rows()) = part;
  }
  return r;
}

RowMax correlation_argmax(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b,
                          Execution exec) {
  if (a.cols() != b.cols()) {
    throw DataError("correlation_argmax: dimension mismatch");
  }
  const Eigen::MatrixXd za = standardize_rows(a, "predicted matrix");
  const Eigen::MatrixXd zb = standardize_rows(b, "gold matrix");
  RowMax out;
  out.index.resize(static_cast<std::size_t>(a.rows()));
  out.value.resize(static_cast<std::size_t>(a.rows()));
  const Eigen::Index blocks = block_count(a.rows());
#pragma omp parallel for schedule(static) if (exec == Execution::parallel)
  for (Eigen::Index k = 0; k < blocks; ++k) {
    scan_block(block_product(za, zb, k), k * kRowBlock, out);
  }
  return out;
}

RowMax row_argmax(const Eigen::MatrixXd& r) {
  RowMax out;
  out.index.resize(static_cast<std::size_t>(r.rows()));
  out.value.resize(static_cast<std::size_t>(r.rows()));
  scan_block(r, 0, out);
  return out;
}

namespace reference {

double pearson(const Eigen::Ref<const Eigen::VectorXd>& u,
               const Eigen::Ref<const Eigen::VectorXd>& v) {
  if (u.size() != v.size() || u.size() == 0) {
    throw DataError("pearson: vectors must have equal non-zero length");
  }
  const double mu = u.mean();
  const double mv = v.mean();
  double suv = 0.0, suu = 0.0, svv = 0.0;
  for (Eigen::Index k = 0; k < u.size(); ++k) {
    const double du = u(k) - mu;
    const double dv = v(k) - mv;
    suv += du * dv;
    suu += du * du;
    svv += dv * dv;
  }
  if (zero_variance(std::sqrt(suu), u.norm()) ||
      zero_variance(std::sqrt(svv), v.norm())) {
    throw DataError("pearson: zero variance");
  }
  return std::clamp(suv / std::sqrt(suu * svv), -1.0, 1.0);
}

Eigen::MatrixXd correlation_matrix(const Eigen::MatrixXd& a,
                                   const Eigen::MatrixXd& b) {
  Eigen::MatrixXd r(a.rows(), b.rows());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < b.rows(); ++j) {
      r(i, j) = pearson(a.row(i).transpose(), b.row(j).transpose());
    }
  }
  return r;
}

}  // namespace reference
}  // namespace ldl::kernels
