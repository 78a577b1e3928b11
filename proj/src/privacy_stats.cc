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

#include "santext/privacy_stats.h"

#include <algorithm>
#include <cmath>

#include "santext/error.h"
#include "santext/parallel.h"
#include "santext/random.h"

namespace santext {

Quantiles ComputeQuantiles(std::vector<double> values) {
  Quantiles q;
  if (values.empty()) return q;
  std::sort(values.begin(), values.end());
  const auto at = [&](double f) {
    const double pos = f * static_cast<double>(values.size() - 1);
    const auto lo = static_cast<std::size_t>(std::floor(pos));
    const std::size_t hi = std::min(lo + 1, values.size() - 1);
    const double frac = pos - static_cast<double>(lo);
    return values[lo] + frac * (values[hi] - values[lo]);
  };
  q.min = values.front();
  q.q1 = at(0.25);
  q.median = at(0.5);
  q.q3 = at(0.75);
  q.max = values.back();
  return q;
}

PrivacyReport EstimatePrivacyStats(const ProbabilityModel& model, int runs,
                                   std::uint64_t seed, int threads) {
  if (runs < 1) throw Error(ErrorCode::kInvalidArgument, "runs must be >= 1");
  const std::size_t n = model.vocab_size();
  PrivacyReport report;
  report.runs = runs;
  report.self_rate.assign(n, 0.0);
  report.output_support.assign(n, 0);
  report.hartley_entropy.assign(n, 0.0);
  report.min_entropy.assign(n, std::nullopt);

  const std::size_t chunks = ChunkCount(n, threads);
  std::vector<std::vector<std::uint32_t>> incoming(
      chunks, std::vector<std::uint32_t>(n, 0));

  ParallelFor(n, threads, [&](std::size_t begin, std::size_t end,
                              std::size_t chunk) {
    // last_seen[y] == x + 1 marks y as already output by M(x).
    std::vector<std::uint32_t> last_seen(n, 0);
    std::vector<std::uint32_t>& in_support = incoming[chunk];
    for (std::size_t x = begin; x < end; ++x) {
      const auto id = static_cast<TokenId>(x);
      RandomStream rng = MakeStream(seed, StreamDomain::kAudit, x);
      std::uint64_t self = 0;
      std::uint32_t distinct = 0;
      for (int r = 0; r < runs; ++r) {
        const TokenId y = model.Sample(id, rng);
        if (y == id) ++self;
        if (last_seen[y] != id + 1) {
          last_seen[y] = id + 1;
          ++distinct;
          ++in_support[y];
        }
      }
      const double rate = static_cast<double>(self) / runs;
      report.self_rate[x] = rate;
      report.output_support[x] = distinct;
      report.hartley_entropy[x] = std::log(static_cast<double>(distinct));
      if (self > 0) report.min_entropy[x] = -std::log(rate);
    }
  });

  report.input_support.assign(n, 0);
  for (const auto& part : incoming) {
    for (std::size_t y = 0; y < n; ++y) report.input_support[y] += part[y];
  }

  std::vector<double> s(n), s_star(n), h_inf;
  for (std::size_t i = 0; i < n; ++i) {
    s[i] = report.output_support[i];
    s_star[i] = report.input_support[i];
    if (report.min_entropy[i]) h_inf.push_back(*report.min_entropy[i]);
  }
  report.self_rate_quantiles = ComputeQuantiles(report.self_rate);
  report.output_support_quantiles = ComputeQuantiles(s);
  report.input_support_quantiles = ComputeQuantiles(s_star);
  report.hartley_quantiles = ComputeQuantiles(report.hartley_entropy);
  report.min_entropy_quantiles = ComputeQuantiles(h_inf);
  return report;
}

double RenyiEntropy(const Eigen::Ref<const Eigen::VectorXd>& row,
                    double alpha) {
  if (alpha == 1.0) {
    throw Error(ErrorCode::kInvalidArgument,
                "alpha = 1 (Shannon entropy) is not supported");
  }
  if (!(alpha >= 0.0)) {
    throw Error(ErrorCode::kInvalidArgument, "alpha must be non-negative");
  }
  if (std::isinf(alpha)) return -std::log(row.maxCoeff());
  if (alpha == 0.0) {
    return std::log(static_cast<double>((row.array() > 0.0).count()));
  }
  double sum = 0.0;
  for (Eigen::Index i = 0; i < row.size(); ++i) {
    if (row[i] > 0.0) sum += std::pow(row[i], alpha);
  }
  return std::log(sum) / (1.0 - alpha);
}

}  // namespace santext
