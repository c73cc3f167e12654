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

#include "asysg/theory/smoothness.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <numeric>

#include "asysg/core/error.hpp"

namespace asysg {
namespace {

double binomial(std::size_t n, std::size_t k) {
  if (k > n) return 0.0;
  double r = 1.0;
  for (std::size_t i = 1; i <= k; ++i) {
    r = r * static_cast<double>(n - k + i) / static_cast<double>(i);
  }
  return r;
}

// Advance `idx` (strictly increasing, values < n) to the next k-combination.
bool next_combination(std::vector<std::size_t>& idx, std::size_t n) {
  const std::size_t k = idx.size();
  std::size_t i = k;
  while (i > 0) {
    --i;
    if (idx[i] < n - k + i) {
      ++idx[i];
      for (std::size_t j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
      return true;
    }
  }
  return false;
}

}  // namespace

double SmoothnessConstants::at(std::size_t s) const {
  if (s == 0) throw TheoryError("L_s is defined for s >= 1");
  if (s <= L_s.size()) return L_s[s - 1];
  return L;
}

double support_count(std::size_t n, std::size_t max_s) {
  double total = 0.0;
  for (std::size_t s = 1; s <= std::min(n, max_s); ++s) total += binomial(n, s);
  return total;
}

SmoothnessConstants constants_quadratic(const DenseMatrix& Q, std::size_t max_s) {
  if (!Q.is_square()) throw DimensionError("constants_quadratic: Q must be square");
  const std::size_t n = Q.rows;
  double scale = 0.0;
  for (double v : Q.data) scale = std::max(scale, std::abs(v));
  if (!Q.is_symmetric(1e-12 * std::max(1.0, scale))) {
    throw TheoryError("constants_quadratic: Q must be symmetric");
  }
  if (max_s == 0 || max_s > n) max_s = n;
  if (support_count(n, max_s) > kMaxSupports) {
    throw TheoryError("constants_quadratic: support enumeration too large");
  }

  SmoothnessConstants out;
  if (n == 0) return out;
  const auto en = static_cast<Eigen::Index>(n);
  Eigen::Map<const Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>> q(
      Q.data.data(), en, en);
  const Eigen::MatrixXd q2 = q.transpose() * q;

  {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(q2, Eigen::EigenvaluesOnly);
    out.L = std::sqrt(std::max(0.0, es.eigenvalues()(en - 1)));
  }
  for (std::size_t i = 0; i < n; ++i) out.L_max = std::max(out.L_max, std::abs(Q(i, i)));

  // ||Q[:,S]||_2^2 = lambda_max((Q^T Q)[S,S]); adding columns never decreases
  // it, so the max over |S| <= s is attained at |S| = s.
  out.L_s.reserve(max_s);
  for (std::size_t s = 1; s <= max_s; ++s) {
    double best = 0.0;
    if (s == n) {
      best = out.L * out.L;
    } else {
      std::vector<std::size_t> idx(s);
      std::iota(idx.begin(), idx.end(), std::size_t{0});
      Eigen::MatrixXd sub(static_cast<Eigen::Index>(s), static_cast<Eigen::Index>(s));
      do {
        for (std::size_t a = 0; a < s; ++a) {
          for (std::size_t b = 0; b < s; ++b) {
            sub(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b)) =
                q2(static_cast<Eigen::Index>(idx[a]), static_cast<Eigen::Index>(idx[b]));
          }
        }
        double top;
        if (s == 1) {
          top = sub(0, 0);
        } else {
          Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(sub, Eigen::EigenvaluesOnly);
          top = es.eigenvalues()(static_cast<Eigen::Index>(s) - 1);
        }
        best = std::max(best, top);
      } while (next_combination(idx, n));
    }
    double ls = std::sqrt(std::max(0.0, best));
    // Clamp rounding so the ordering invariants hold exactly.
    if (!out.L_s.empty()) ls = std::max(ls, out.L_s.back());
    ls = std::clamp(ls, out.L_max, std::max(out.L, out.L_max));
    out.L_s.push_back(ls);
  }
  out.L = std::max(out.L, out.L_s.back());
  return out;
}

}  // namespace asysg
