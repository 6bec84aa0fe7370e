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

#include "ldl/linear_map.hpp"

#include <bit>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <limits>
#include <sstream>

#include <Eigen/Cholesky>
#include <Eigen/SVD>

#include "ldl/errors.hpp"

namespace ldl {

namespace {

static_assert(std::endian::native == std::endian::little,
              "binary map format assumes a little-endian host");

constexpr char kMagic[8] = {'L', 'D', 'L', 'M', 'A', 'P', '0', '1'};

void check_inputs(Eigen::Index x_rows, Eigen::Index y_rows, bool finite,
                  const SolverOptions& options) {
  if (x_rows != y_rows) {
    throw DataError("estimate_map: X has " + std::to_string(x_rows) +
                    " rows but Y has " + std::to_string(y_rows));
  }
  if (!finite) throw NumericalError("estimate_map: non-finite input");
  if (!(options.ridge >= 0.0) || !std::isfinite(options.ridge)) {
    throw ConfigError("ridge must be a finite non-negative number");
  }
}

LinearMap solve_svd(const Eigen::MatrixXd& x, const Eigen::MatrixXd& y,
                    double ridge) {
  Eigen::BDCSVD<Eigen::MatrixXd> svd(x, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const auto& sigma = svd.singularValues();
  const double smax = sigma.size() ? sigma(0) : 0.0;
  const double tol = static_cast<double>(std::max(x.rows(), x.cols())) *
                     std::numeric_limits<double>::epsilon() * smax;
  Eigen::VectorXd gain(sigma.size());
  Eigen::Index rank = 0;
  for (Eigen::Index k = 0; k < sigma.size(); ++k) {
    const double s = sigma(k);
    if (s > tol) {
      gain(k) = s / (s * s + ridge);
      ++rank;
    } else {
      gain(k) = ridge > 0.0 ? s / (s * s + ridge) : 0.0;
    }
  }
  LinearMap out;
  out.coefficients =
      svd.matrixV() * gain.asDiagonal() * (svd.matrixU().transpose() * y);
  out.solver = Solver::svd;
  out.rank = rank;
  return out;
}

// Shared driver: `gram` is X'X, `xty` is X'Y, `dense_x` materializes X for
// the singular-value fallback.
template <typename DenseX>
LinearMap solve(Eigen::MatrixXd gram, const Eigen::MatrixXd& xty,
                DenseX&& dense_x, const Eigen::MatrixXd& y,
                const SolverOptions& options) {
  const Eigen::Index p = gram.rows();
  if (p == 0 || y.rows() == 0) {
    LinearMap out;
    out.coefficients = Eigen::MatrixXd::Zero(p, y.cols());
    out.solver = Solver::svd;
    return out;
  }
  gram.diagonal().array() += options.ridge;
  Eigen::LLT<Eigen::MatrixXd> llt(gram);
  if (llt.info() == Eigen::Success && llt.rcond() >= options.min_rcond) {
    LinearMap out;
    out.coefficients = llt.solve(xty);
    out.solver = Solver::cholesky;
    out.rank = p;
    return out;
  }
  return solve_svd(dense_x(), y, options.ridge);
}

void finish(LinearMap& map, const Eigen::MatrixXd& fitted,
            const Eigen::MatrixXd& y, double ridge) {
  map.ridge = ridge;
  map.fit_residual = (fitted - y).norm();
  if (!map.coefficients.allFinite()) {
    throw NumericalError("estimate_map: solution is not finite");
  }
}

template <typename T>
void write_pod(std::ostream& out, T value) {
  out.write(reinterpret_cast<const char*>(&value), sizeof(T));
}

template <typename T>
T read_pod(std::istream& in) {
  T value{};
  in.read(reinterpret_cast<char*>(&value), sizeof(T));
  return value;
}

}  // namespace

LinearMap estimate_map(const Eigen::MatrixXd& x, const Eigen::MatrixXd& y,
                       const SolverOptions& options) {
  check_inputs(x.rows(), y.rows(), x.allFinite() && y.allFinite(), options);
  LinearMap map = solve(
      x.transpose() * x, x.transpose() * y,
      [&]() -> const Eigen::MatrixXd& { return x; }, y, options);
  finish(map, x * map.coefficients, y, options.ridge);
  return map;
}

LinearMap estimate_map(const SparseRowMatrix& x, const Eigen::MatrixXd& y,
                       const SolverOptions& options) {
  bool finite = y.allFinite();
  for (Eigen::Index k = 0; k < x.nonZeros(); ++k) {
    finite = finite && std::isfinite(x.valuePtr()[k]);
  }
  check_inputs(x.rows(), y.rows(), finite, options);
  const Eigen::SparseMatrix<double> xt = x.transpose();
  Eigen::MatrixXd gram = Eigen::MatrixXd(xt * x);
  Eigen::MatrixXd xty = xt * y;
  LinearMap map = solve(
      std::move(gram), xty, [&]() { return Eigen::MatrixXd(x); }, y, options);
  finish(map, x * map.coefficients, y, options.ridge);
  return map;
}

LinearMap estimate_map(const Eigen::MatrixXd& x, const SparseRowMatrix& y,
                       const SolverOptions& options) {
  return estimate_map(x, Eigen::MatrixXd(y), options);
}

Eigen::MatrixXd apply_map(const Eigen::MatrixXd& x, const LinearMap& map) {
  if (x.cols() != map.input_dims()) {
    throw DataError("apply_map: input has " + std::to_string(x.cols()) +
                    " columns, map expects " +
                    std::to_string(map.input_dims()));
  }
  return x * map.coefficients;
}

Eigen::MatrixXd apply_map(const SparseRowMatrix& x, const LinearMap& map) {
  if (x.cols() != map.input_dims()) {
    throw DataError("apply_map: input has " + std::to_string(x.cols()) +
                    " columns, map expects " +
                    std::to_string(map.input_dims()));
  }
  return x * map.coefficients;
}

LinearMap comprehension_map(const CueMatrix& cues, const SemanticMatrix& space,
                            const SolverOptions& options) {
  return estimate_map(cues.matrix, space.values(), options);
}

LinearMap production_map(const SemanticMatrix& space, const CueMatrix& cues,
                         const SolverOptions& options) {
  return estimate_map(space.values(), cues.matrix, options);
}

void save_map_binary(const LinearMap& map, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError("cannot write '" + path.string() + "'");
  out.write(kMagic, sizeof(kMagic));
  write_pod<std::uint64_t>(out, static_cast<std::uint64_t>(map.input_dims()));
  write_pod<std::uint64_t>(out, static_cast<std::uint64_t>(map.output_dims()));
  write_pod<double>(out, map.ridge);
  write_pod<double>(out, map.fit_residual);
  for (Eigen::Index i = 0; i < map.coefficients.rows(); ++i) {
    for (Eigen::Index j = 0; j < map.coefficients.cols(); ++j) {
      write_pod<double>(out, map.coefficients(i, j));
    }
  }
}

LinearMap load_map_binary(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open '" + path.string() + "'");
  char magic[sizeof(kMagic)];
  in.read(magic, sizeof(magic));
  if (!in || std::memcmp(magic, kMagic, sizeof(kMagic)) != 0) {
    throw DataError(path.string() + ": not a binary linear map");
  }
  const auto rows = read_pod<std::uint64_t>(in);
  const auto cols = read_pod<std::uint64_t>(in);
  LinearMap map;
  map.ridge = read_pod<double>(in);
  map.fit_residual = read_pod<double>(in);
  map.coefficients.resize(static_cast<Eigen::Index>(rows),
                          static_cast<Eigen::Index>(cols));
  for (Eigen::Index i = 0; i < map.coefficients.rows(); ++i) {
    for (Eigen::Index j = 0; j < map.coefficients.cols(); ++j) {
      map.coefficients(i, j) = read_pod<double>(in);
    }
  }
  if (!in) throw DataError(path.string() + ": truncated linear map");
  return map;
}

void save_map_text(const LinearMap& map, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw DataError("cannot write '" + path.string() + "'");
  out << map.input_dims() << ' ' << map.output_dims() << ' '
      << format_double(map.ridge) << ' ' << format_double(map.fit_residual)
      << '\n';
  for (Eigen::Index i = 0; i < map.coefficients.rows(); ++i) {
    for (Eigen::Index j = 0; j < map.coefficients.cols(); ++j) {
      out << (j ? " " : "") << format_double(map.coefficients(i, j));
    }
    out << '\n';
  }
}

LinearMap load_map_text(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open '" + path.string() + "'");
  Eigen::Index rows = 0, cols = 0;
  LinearMap map;
  if (!(in >> rows >> cols >> map.ridge >> map.fit_residual) || rows < 0 ||
      cols < 0) {
    throw DataError(path.string() + ": bad linear map header");
  }
  map.coefficients.resize(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i) {
    for (Eigen::Index j = 0; j < cols; ++j) {
      if (!(in >> map.coefficients(i, j))) {
        throw DataError(path.string() + ": truncated linear map");
      }
    }
  }
  return map;
}

}  // namespace ldl
