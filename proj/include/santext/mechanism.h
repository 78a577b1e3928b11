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

#ifndef SANTEXT_MECHANISM_H_
#define SANTEXT_MECHANISM_H_

#include <cstdint>
#include <iosfwd>
#include <memory>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "santext/embedding.h"
#include "santext/random.h"
#include "santext/vocab.h"

namespace santext {

enum class MechanismKind {
  // Exponential mechanism over all of V with utility -d(x, y) / 2.
  kSanText,
  // Sensitive inputs: the same mechanism restricted to the protected set.
  // Non-sensitive inputs: kept with probability 1 - p, otherwise mapped into
  // the protected set.
  kSanTextPlus,
  // Uniform replacement over V, independent of the input.
  kUniformRandom,
};

std::optional<MechanismKind> ParseMechanismKind(std::string_view name);
std::string_view ToString(MechanismKind kind);

struct MechanismConfig {
  MechanismKind kind = MechanismKind::kSanText;
  // Metric privacy parameter, in units of inverse embedding distance.
  double epsilon = 1.0;
  // Probability that a non-sensitive token is replaced (SanText+ only).
  double p = 0.3;
  std::uint64_t seed = 0;

  // ln(1/p); empty for p == 0, where no finite cross-partition bound exists.
  std::optional<double> epsilon0() const;
  // Throws Error(kInvalidArgument) unless epsilon is finite and >= 0 and p is
  // in [0, 1].
  void Validate() const;
};

// softmax(logits) after subtracting the maximum. Equal logits give bitwise
// equal outputs.
template <typename Derived>
Eigen::Matrix<typename Derived::Scalar, Eigen::Dynamic, 1> StableSoftmax(
    const Eigen::MatrixBase<Derived>& logits) {
  using Scalar = typename Derived::Scalar;
  const Scalar top = logits.maxCoeff();
  Eigen::Matrix<Scalar, Eigen::Dynamic, 1> w = (logits.array() - top).exp();
  return w / w.sum();
}

// Pr[y | x] proportional to exp(-epsilon * d(x, y) / 2) over `targets`.
// The normalizer is implied by the softmax and never formed on its own.
Eigen::VectorXd ComputeRow(TokenId x, std::span<const TokenId> targets,
                           double epsilon, const EmbeddingMatrix& embeddings);

enum class ModelLayout { kFullMatrix, kLazyRow };

std::string_view ToString(ModelLayout layout);

struct ModelOptions {
  // Full matrix iff rows * slots * kFullMatrixBytesPerEntry fits.
  std::uint64_t memory_budget_bytes = std::uint64_t{4} << 30;
  int threads = 1;
  // Forces a layout regardless of the budget.
  std::optional<ModelLayout> layout;
};

// Probability, alias threshold and alias index per materialized entry.
inline constexpr std::uint64_t kFullMatrixBytesPerEntry = 8 + 8 + 4;

struct RowCacheStats {
  std::uint64_t hits = 0;
  std::uint64_t misses = 0;
};

// Per-input substitution distributions. Row x has a distance-weighted part
// over targets() and, for non-sensitive SanText+ inputs, a passthrough mass
// on x itself. Immutable once built; Sample() is safe to call concurrently.
class ProbabilityModel {
 public:
  static ProbabilityModel Build(
      std::shared_ptr<const EmbeddingMatrix> embeddings,
      const SensitivityPartition* partition, const MechanismConfig& config,
      const ModelOptions& options = {});

  ProbabilityModel(ProbabilityModel&&) noexcept;
  ProbabilityModel& operator=(ProbabilityModel&&) noexcept;
  ~ProbabilityModel();

  const MechanismConfig& config() const;
  MechanismKind kind() const { return config().kind; }
  ModelLayout layout() const;
  std::size_t vocab_size() const;
  // All of V, or the protected set for SanText+. Sorted ascending.
  std::span<const TokenId> targets() const;
  bool is_sensitive(TokenId x) const;
  double passthrough_mass(TokenId x) const;

  // Distance-weighted part of row x, aligned with targets().
  Eigen::VectorXd TargetRow(TokenId x) const;
  // Row x over all of V.
  Eigen::VectorXd DenseRow(TokenId x) const;
  // |V| x |V| transition matrix, row = input.
  Eigen::MatrixXd DenseMatrix() const;
  double Probability(TokenId x, TokenId y) const;

  TokenId Sample(TokenId x, RandomStream& rng) const;

  std::uint64_t embedding_hash() const;
  std::uint64_t partition_hash() const;
  RowCacheStats cache_stats() const;

  // Full-matrix models only: header, then |V| x |targets| little-endian
  // doubles (the distance-weighted parts, row-major).
  void Save(std::ostream& out, std::uint64_t vocab_hash) const;
  // Throws Error(kConfiguration) if the file was produced from a different
  // vocabulary, partition or embedding.
  static ProbabilityModel Load(std::istream& in, std::uint64_t vocab_hash,
                               std::shared_ptr<const EmbeddingMatrix> embeddings,
                               const SensitivityPartition* partition,
                               const ModelOptions& options = {});

 private:
  struct Impl;
  explicit ProbabilityModel(std::unique_ptr<Impl> impl);
  static std::unique_ptr<Impl> NewImpl(
      std::shared_ptr<const EmbeddingMatrix> embeddings,
      const SensitivityPartition* partition, const MechanismConfig& config,
      const ModelOptions& options, std::optional<ModelLayout> forced);
  std::unique_ptr<Impl> impl_;
};

struct SanitizedDocument {
  std::uint64_t stream_id = 0;
  std::vector<TokenId> tokens;
};

inline TokenId SanitizeToken(TokenId x, const ProbabilityModel& model,
                             RandomStream& rng) {
  return model.Sample(x, rng);
}

// Tokens are sanitized independently, in order, from a stream derived from
// (master_seed, document.id) alone.
SanitizedDocument SanitizeDocument(const Document& document,
                                   const ProbabilityModel& model,
                                   std::uint64_t master_seed);

}  // namespace santext

#endif  // SANTEXT_MECHANISM_H_
