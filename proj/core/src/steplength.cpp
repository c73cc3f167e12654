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

#include "asysg/theory/steplength.hpp"

#include <cmath>
#include <string>

#include "asysg/core/error.hpp"

namespace asysg {
namespace {

void require_positive(double v, const char* name) {
  if (!(v > 0.0) || !std::isfinite(v)) {
    throw TheoryError(std::string(name) + " must be positive and finite");
  }
}

// ceil() that does not round an exact integer up because of a trailing ulp.
std::uint64_t ceil_count(double v) {
  const double r = std::round(v);
  if (std::abs(v - r) <= 1e-12 * std::max(1.0, std::abs(v))) return static_cast<std::uint64_t>(r);
  return static_cast<std::uint64_t>(std::ceil(v));
}

}  // namespace

double steplength_corollary2(double gap, double M, double L, double K, double sigma_sq) {
  require_positive(gap, "gap");
  require_positive(M, "M");
  require_positive(L, "L");
  require_positive(K, "K");
  require_positive(sigma_sq, "sigma_sq");
  return std::sqrt(gap / (M * L * K * sigma_sq));
}

std::uint64_t k_threshold_corollary2(double gap, double M, double L, double sigma_sq,
                                     std::uint64_t T) {
  require_positive(gap, "gap");
  require_positive(M, "M");
  require_positive(L, "L");
  require_positive(sigma_sq, "sigma_sq");
  const double t1 = static_cast<double>(T) + 1.0;
  return ceil_count(4.0 * M * L * gap / sigma_sq * t1 * t1);
}

bool check_condition_thm1(std::span<const double> gamma_schedule, double L, double M,
                          std::uint64_t T) {
  const std::size_t len = gamma_schedule.size();
  if (len == 0) return true;
  for (double g : gamma_schedule) {
    if (!(g >= 0.0)) throw TheoryError("steplengths must be nonnegative");
  }
  const double tt = static_cast<double>(T);
  for (std::size_t k = 0; k < len; ++k) {
    double window = 0.0;
    for (std::uint64_t j = 1; j <= T; ++j) {
      const std::size_t idx = k + static_cast<std::size_t>(j);
      window += gamma_schedule[idx < len ? idx : len - 1];
    }
    const double g = gamma_schedule[k];
    const double lhs = L * M * g + 2.0 * L * L * M * M * tt * g * window;
    if (lhs > 1.0 + kConditionSlack) return false;
  }
  return true;
}

double condition_thm1_lhs(double gamma, double L, double M, std::uint64_t T) {
  const double tt = static_cast<double>(T);
  return L * M * gamma + 2.0 * L * L * M * M * tt * tt * gamma * gamma;
}

bool check_condition_thm1(double gamma, double L, double M, std::uint64_t T) {
  if (!(gamma >= 0.0)) throw TheoryError("steplength must be nonnegative");
  return condition_thm1_lhs(gamma, L, M, T) <= 1.0 + kConditionSlack;
}

double bound_con(double gap, double M, double L, double K, double sigma_sq, std::uint64_t T,
                 double gamma, ConBound variant) {
  require_positive(gap, "gap");
  require_positive(M, "M");
  require_positive(L, "L");
  require_positive(K, "K");
  require_positive(sigma_sq, "sigma_sq");
  switch (variant) {
    case ConBound::kThm1Constant: {
      require_positive(gamma, "gamma");
      if (!check_condition_thm1(gamma, L, M, T)) {
        throw TheoryError("bound_con: steplength violates the consistent-read steplength condition");
      }
      const double tt = static_cast<double>(T);
      return 2.0 * gap / (M * K * gamma) + gamma * L * sigma_sq +
             2.0 * L * L * M * tt * gamma * gamma * sigma_sq;
    }
    case ConBound::kCorollary2: {
      const std::uint64_t kmin = k_threshold_corollary2(gap, M, L, sigma_sq, T);
      if (K < static_cast<double>(kmin)) {
        throw TheoryError("bound_con: K = " + std::to_string(static_cast<std::uint64_t>(K)) +
                          " below the threshold " + std::to_string(kmin));
      }
      return 4.0 * std::sqrt(gap * L / (M * K)) * std::sqrt(sigma_sq);
    }
  }
  throw TheoryError("bound_con: unknown variant");
}

double steplength_corollary4(double gap, double n, double K, double L_T, double M, double sigma) {
  require_positive(gap, "gap");
  require_positive(n, "n");
  require_positive(K, "K");
  require_positive(L_T, "L_T");
  require_positive(M, "M");
  require_positive(sigma, "sigma");
  return std::sqrt(gap * n) / (std::sqrt(K * L_T * M) * sigma);
}

std::uint64_t k_threshold_corollary4(double gap, double L_T, double M, double n,
                                     std::uint64_t T, double sigma_sq) {
  require_positive(gap, "gap");
  require_positive(L_T, "L_T");
  require_positive(M, "M");
  require_positive(n, "n");
  require_positive(sigma_sq, "sigma_sq");
  const double tt = static_cast<double>(T);
  const double rn = std::sqrt(n);
  return ceil_count(16.0 * gap * L_T * M * (n * rn + 4.0 * tt * tt) / (rn * sigma_sq));
}

double condition_thm3_lhs(double gamma, double M, std::uint64_t T, double L_T, double L_max,
                          double n) {
  const double tt = static_cast<double>(T);
  const double rn = std::sqrt(n);
  return 2.0 * M * M * tt * L_T * L_T * (rn + tt - 1.0) * gamma * gamma / (n * rn) +
         2.0 * M * L_max * gamma;
}

bool check_condition_thm3(double gamma, double M, std::uint64_t T, double L_T, double L_max,
                          double n) {
  if (!(gamma >= 0.0) || !(M >= 0.0) || !(L_T >= 0.0) || !(L_max >= 0.0)) {
    throw TheoryError("check_condition_thm3: inputs must be nonnegative");
  }
  if (!(n >= 1.0)) throw TheoryError("check_condition_thm3: n must be >= 1");
  return condition_thm3_lhs(gamma, M, T, L_T, L_max, n) <= 1.0 + kConditionSlack;
}

double bound_incon(const InconBoundArgs& a, InconBound variant) {
  require_positive(a.gap, "gap");
  require_positive(a.n, "n");
  require_positive(a.K, "K");
  require_positive(a.M, "M");
  require_positive(a.L_T, "L_T");
  require_positive(a.sigma_sq, "sigma_sq");
  const double sigma = std::sqrt(a.sigma_sq);
  const double tt = static_cast<double>(a.T);
  switch (variant) {
    case InconBound::kThm3:
    case InconBound::kThm3Appendix: {
      require_positive(a.gamma, "gamma");
      if (!check_condition_thm3(a.gamma, a.M, a.T, a.L_T, a.L_max, a.n)) {
        throw TheoryError("bound_incon: steplength violates the inconsistent-read steplength condition");
      }
      const double head = 2.0 * a.n * a.gap / (a.K * a.M * a.gamma);
      const double tail = a.L_max * a.gamma * a.sigma_sq;
      const double base = a.L_T * a.L_T * tt * a.M * a.gamma * a.gamma * a.sigma_sq;
      const double middle = variant == InconBound::kThm3 ? base / (2.0 * a.n) : 2.0 * base / a.n;
      return head + middle + tail;
    }
    case InconBound::kCorollary4: {
      const std::uint64_t kmin = k_threshold_corollary4(a.gap, a.L_T, a.M, a.n, a.T, a.sigma_sq);
      if (a.K < static_cast<double>(kmin)) {
        throw TheoryError("bound_incon: K = " + std::to_string(static_cast<std::uint64_t>(a.K)) +
                          " below the threshold " + std::to_string(kmin));
      }
      return std::sqrt(72.0 * a.gap * a.L_T * a.n / (a.K * a.M)) * sigma;
    }
    case InconBound::kSparse: {
      require_positive(a.g0max, "g0max");
      return 6.0 * std::sqrt(2.0 * a.gap * a.L_T) * a.g0max * sigma / std::sqrt(a.K * a.M);
    }
  }
  throw TheoryError("bound_incon: unknown variant");
}

}  // namespace asysg
