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

#ifndef SANTEXT_DP_VERIFY_H_
#define SANTEXT_DP_VERIFY_H_

#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "santext/embedding.h"
#include "santext/mechanism.h"
#include "santext/vocab.h"

namespace santext {

// Allowed floating-point excess in log-ratio space.
inline constexpr double kVerificationSlack = 1e-9;

enum class BoundKind {
  // log P(y|x) - log P(y|x') <= epsilon * d(x, x').
  kMldp,
  // Same, plus epsilon0 for pairs on opposite sides of the partition, over
  // protected outputs only; unprotected outputs must be invertible.
  kUmldp,
  // log P(y|x) - log P(y|x') <= epsilon, metric-free.
  kLdp,
};

std::string_view ToString(BoundKind kind);

struct Witness {
  TokenId x = kInvalidTokenId;
  TokenId x_prime = kInvalidTokenId;
  TokenId y = kInvalidTokenId;
};

struct VerifyOptions {
  // At or below this vocabulary size every (x, x', y) triple is checked.
  std::size_t exhaustive_cap = 200;
  // Above the cap: this many random input pairs (x, x'), each checked
  // against every output y.
  std::size_t sampled_pairs = 2000;
  std::uint64_t seed = 0;
  double slack = kVerificationSlack;
  int threads = 1;
};

struct DPVerificationResult {
  BoundKind bound = BoundKind::kMldp;
  double epsilon = 0.0;
  // Cross-partition allowance; NaN unless bound == kUmldp with p > 0.
  double epsilon0 = std::numeric_limits<double>::quiet_NaN();
  // Max over checked triples of log(P(y|x)/P(y|x')) minus the bound. -inf
  // when no triple had P(y|x) > 0; +inf when P(y|x) > 0 = P(y|x').
  double max_log_ratio_excess = -std::numeric_limits<double>::infinity();
  std::optional<Witness> witness;
  bool exhaustive = true;
  std::uint64_t pairs_checked = 0;
  std::uint64_t triples_checked = 0;
  // UMLDP only: every unprotected output y is reachable from y alone.
  std::optional<bool> unprotected_outputs_invertible;
  // (x, y) with x != y putting mass on unprotected y, or (y, y) missing its
  // passthrough mass.
  std::optional<Witness> unprotected_witness;
  std::vector<std::string> notes;
  bool passed = false;
};

// Checks on an explicit |V| x |V| transition matrix (row = input).
DPVerificationResult VerifyMldp(const Eigen::Ref<const Eigen::MatrixXd>& transition,
                                const EmbeddingMatrix& embeddings,
                                double epsilon,
                                const VerifyOptions& options = {});
DPVerificationResult VerifyUmldp(
    const Eigen::Ref<const Eigen::MatrixXd>& transition,
    const SensitivityPartition& partition, const EmbeddingMatrix& embeddings,
    double epsilon, double p, const VerifyOptions& options = {});
DPVerificationResult VerifyLdp(const Eigen::Ref<const Eigen::MatrixXd>& transition,
                               double epsilon,
                               const VerifyOptions& options = {});

// Model overloads: exhaustive from the dense matrix at or below the cap,
// otherwise sampled pairs with rows pulled one at a time.
DPVerificationResult VerifyMldp(const ProbabilityModel& model,
                                const EmbeddingMatrix& embeddings,
                                double epsilon,
                                const VerifyOptions& options = {});
DPVerificationResult VerifyUmldp(const ProbabilityModel& model,
                                 const SensitivityPartition& partition,
                                 const EmbeddingMatrix& embeddings,
                                 double epsilon, double p,
                                 const VerifyOptions& options = {});
DPVerificationResult VerifyLdp(const ProbabilityModel& model, double epsilon,
                               const VerifyOptions& options = {});

}  // namespace santext

#endif  // SANTEXT_DP_VERIFY_H_
