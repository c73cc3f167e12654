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

#pragma once

#include <cstdint>
#include <span>

namespace asysg {

// Slack used when a condition is checked against its right-hand side of 1, so
// that exact-equality cases are not lost to rounding.
inline constexpr double kConditionSlack = 1e-12;

// ---- consistent read --------------------------------------------------------

// gamma = sqrt(gap / (M L K sigma^2)).
double steplength_corollary2(double gap, double M, double L, double K, double sigma_sq);

// K_min = ceil(4 M L gap / sigma^2 * (T + 1)^2).
std::uint64_t k_threshold_corollary2(double gap, double M, double L, double sigma_sq,
                                     std::uint64_t T);

// L M g_k + 2 L^2 M^2 T g_k sum_{j=1..T} g_{k+j} <= 1 for every k. The schedule
// is taken to continue with its last value past its end.
bool check_condition_thm1(std::span<const double> gamma_schedule, double L, double M,
                          std::uint64_t T);
// Constant schedule: L M g + 2 L^2 M^2 T^2 g^2.
double condition_thm1_lhs(double gamma, double L, double M, std::uint64_t T);
bool check_condition_thm1(double gamma, double L, double M, std::uint64_t T);

enum class ConBound {
  kThm1Constant,  // 2 gap/(M K g) + g L sigma^2 + 2 L^2 M T g^2 sigma^2
  kCorollary2,    // 4 sqrt(gap L / (M K)) sigma
};

// Throws TheoryError when the variant's precondition fails: the steplength
// condition for kThm1Constant, K >= K_min for kCorollary2.
double bound_con(double gap, double M, double L, double K, double sigma_sq, std::uint64_t T,
                 double gamma, ConBound variant);

// ---- inconsistent read ------------------------------------------------------

// gamma = sqrt(gap n) / (sqrt(K L_T M) sigma).
double steplength_corollary4(double gap, double n, double K, double L_T, double M, double sigma);

// K_min = ceil(16 gap L_T M (n^{3/2} + 4 T^2) / (sqrt(n) sigma^2)).
std::uint64_t k_threshold_corollary4(double gap, double L_T, double M, double n,
                                     std::uint64_t T, double sigma_sq);

// 2 M^2 T L_T^2 (sqrt(n) + T - 1) g^2 / n^{3/2} + 2 M L_max g <= 1.
double condition_thm3_lhs(double gamma, double M, std::uint64_t T, double L_T, double L_max,
                          double n);
bool check_condition_thm3(double gamma, double M, std::uint64_t T, double L_T, double L_max,
                          double n);

enum class InconBound {
  kThm3,          // 2n gap/(K M g) + L_T^2 T M g^2 sigma^2/(2n) + L_max g sigma^2
  kThm3Appendix,  // same with middle term 2 L_T^2 T M g^2 sigma^2 / n
  kCorollary4,    // sqrt(72 gap L_T n / (K M)) sigma
  kSparse,        // 6 sqrt(2 gap L_T) g0max sigma / sqrt(K M)
};

struct InconBoundArgs {
  double gap = 0.0;
  double n = 1.0;
  double K = 1.0;
  double M = 1.0;
  std::uint64_t T = 0;
  double L_T = 0.0;
  double L_max = 0.0;
  double sigma_sq = 0.0;
  double gamma = 0.0;
  double g0max = 0.0;  // max_k ||g_k||_0, kSparse only
};

// Throws TheoryError when the precondition fails: the steplength condition
// for kThm3*, K >= K_min for kCorollary4.
double bound_incon(const InconBoundArgs& args, InconBound variant);

}  // namespace asysg
