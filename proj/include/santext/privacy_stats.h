// Copyright 2026 The Santext Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef SANTEXT_PRIVACY_STATS_H_
#define SANTEXT_PRIVACY_STATS_H_

#include <cstdint>
#include <limits>
#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "santext/mechanism.h"

namespace santext {

inline constexpr int kDefaultAuditRuns = 1000;

struct Quantiles {
  double min = 0.0;
  double q1 = 0.0;
  double median = 0.0;
  double q3 = 0.0;
  double max = 0.0;
};

// Linear interpolation between order statistics. Empty input gives zeros.
Quantiles ComputeQuantiles(std::vector<double> values);

// Monte Carlo estimates per input token x (and per output y for the
// plausible-deniability count).
struct PrivacyReport {
  int runs = 0;
  // N_x: fraction of draws of M(x) that returned x.
  std::vector<double> self_rate;
  // S_x: distinct outputs observed from M(x).
  std::vector<std::uint32_t> output_support;
  // S*_y: distinct inputs observed mapping to y.
  std::vector<std::uint32_t> input_support;
  // log(S_x).
  std::vector<double> hartley_entropy;
  // -log(N_x); empty when N_x == 0.
  std::vector<std::optional<double>> min_entropy;

  Quantiles self_rate_quantiles;
  Quantiles output_support_quantiles;
  Quantiles input_support_quantiles;
  Quantiles hartley_quantiles;
  // Over the tokens with a finite min-entropy only.
  Quantiles min_entropy_quantiles;
};

// Draws `runs` samples from every row. Each input token gets its own stream
// derived from (seed, x), so the report does not depend on `threads`.
PrivacyReport EstimatePrivacyStats(const ProbabilityModel& model, int runs,
                                   std::uint64_t seed, int threads = 1);

inline constexpr double kRenyiInfinity = std::numeric_limits<double>::infinity();

// H_alpha(row) = log(sum_y row[y]^alpha) / (1 - alpha), natural log.
// alpha = 0 gives log(support size), alpha = kRenyiInfinity gives
// -log(max). Throws Error(kInvalidArgument) for alpha == 1 or alpha < 0.
double RenyiEntropy(const Eigen::Ref<const Eigen::VectorXd>& row,
                    double alpha);

}  // namespace santext

#endif  // SANTEXT_PRIVACY_STATS_H_
