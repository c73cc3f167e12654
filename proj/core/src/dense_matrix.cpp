// Copyright 2026 The asysg Authors. All Rights Reserved.
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
// =============================================================================

#include "asysg/problems/dense_matrix.hpp"

#include <Eigen/Dense>
#include <cmath>

#include "asysg/core/error.hpp"
#include "asysg/core/random.hpp"

namespace asysg {

DenseMatrix DenseMatrix::identity(std::size_t n) {
  DenseMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

DenseMatrix DenseMatrix::from_rows(const std::vector<std::vector<double>>& rows) {
  DenseMatrix m(rows.size(), rows.empty() ? 0 : rows.front().size());
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != m.cols) throw DimensionError("ragged matrix rows");
    for (std::size_t c = 0; c < m.cols; ++c) m(r, c) = rows[r][c];
  }
  return m;
}

bool DenseMatrix::is_symmetric(double tol) const noexcept {
  if (!is_square()) return false;
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t c = r + 1; c < cols; ++c) {
      if (std::abs((*this)(r, c) - (*this)(c, r)) > tol) return false;
    }
  }
  return true;
}

DenseMatrix make_spd_matrix(const std::vector<double>& eigenvalues, bool rotate,
                            std::uint64_t seed) {
  const auto n = static_cast<Eigen::Index>(eigenvalues.size());
  Eigen::MatrixXd u = Eigen::MatrixXd::Identity(n, n);
  if (rotate) {
    Stream s = derive_stream(SeedSpec{seed}, 0, Purpose::kData);
    Eigen::MatrixXd g(n, n);
    for (Eigen::Index r = 0; r < n; ++r) {
      for (Eigen::Index c = 0; c < n; ++c) g(r, c) = s.normal();
    }
    Eigen::HouseholderQR<Eigen::MatrixXd> qr(g);
    u = qr.householderQ();
  }
  Eigen::VectorXd lambda(n);
  for (Eigen::Index i = 0; i < n; ++i) lambda(i) = eigenvalues[static_cast<std::size_t>(i)];
  Eigen::MatrixXd q = u * lambda.asDiagonal() * u.transpose();
  DenseMatrix out(static_cast<std::size_t>(n), static_cast<std::size_t>(n));
  for (Eigen::Index r = 0; r < n; ++r) {
    for (Eigen::Index c = 0; c < n; ++c) {
      // Symmetrize exactly so is_symmetric(0) holds.
      out(static_cast<std::size_t>(r), static_cast<std::size_t>(c)) = 0.5 * (q(r, c) + q(c, r));
    }
  }
  return out;
}

double max_eigenvalue_symmetric(const DenseMatrix& a) {
  if (!a.is_square()) throw DimensionError("max_eigenvalue_symmetric: matrix is not square");
  if (a.rows == 0) return 0.0;
  const auto n = static_cast<Eigen::Index>(a.rows);
  Eigen::Map<const Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>> m(
      a.data.data(), n, n);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(m, Eigen::EigenvaluesOnly);
  return es.eigenvalues()(n - 1);
}

}  // namespace asysg
