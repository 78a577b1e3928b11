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

#ifndef SANTEXT_EMBEDDING_H_
#define SANTEXT_EMBEDDING_H_

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <unordered_set>
#include <vector>

#include <Eigen/Dense>

#include "santext/vocab.h"

namespace santext {

// Token embeddings, one row per vocabulary id.
template <typename Scalar>
class Embeddings {
 public:
  using Matrix =
      Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
  using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

  Embeddings() = default;
  explicit Embeddings(Matrix vectors) : vectors_(std::move(vectors)) {}

  Eigen::Index size() const { return vectors_.rows(); }
  Eigen::Index dim() const { return vectors_.cols(); }
  const Matrix& matrix() const { return vectors_; }
  auto vector(TokenId id) const { return vectors_.row(id); }

  Scalar Distance(TokenId x, TokenId y) const {
    return (vectors_.row(x) - vectors_.row(y)).norm();
  }

  // Distances from token x to each of `targets`, in order.
  Vector DistancesFrom(TokenId x, std::span<const TokenId> targets) const {
    Vector out(static_cast<Eigen::Index>(targets.size()));
    const auto origin = vectors_.row(x);
    for (std::size_t k = 0; k < targets.size(); ++k) {
      out[static_cast<Eigen::Index>(k)] =
          (vectors_.row(targets[k]) - origin).norm();
    }
    return out;
  }

  // Full pairwise Euclidean distance matrix. Computed from differences, not
  // from the Gram expansion, so d(x, x) is exactly zero.
  Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> PairwiseDistances()
      const {
    const Eigen::Index n = vectors_.rows();
    Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> d(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
      d(i, i) = Scalar(0);
      for (Eigen::Index j = i + 1; j < n; ++j) {
        d(i, j) = d(j, i) = (vectors_.row(i) - vectors_.row(j)).norm();
      }
    }
    return d;
  }

  std::uint64_t ContentHash() const;

 private:
  Matrix vectors_;
};

using EmbeddingMatrix = Embeddings<double>;

template <>
std::uint64_t Embeddings<double>::ContentHash() const;

template <typename Scalar>
Scalar Distance(TokenId x, TokenId y, const Embeddings<Scalar>& embeddings) {
  return embeddings.Distance(x, y);
}

struct GloveLoadResult {
  // Rows for vocabulary ids; rows of missing tokens are zero.
  EmbeddingMatrix embeddings;
  std::vector<std::string> missing;
  // Vocabulary ids whose vector equals an earlier id's vector.
  std::size_t duplicate_vectors = 0;
  std::size_t lines_read = 0;
};

// First field of every line of a GloVe text file.
std::unordered_set<std::string> ScanGloveTokens(const std::string& path);

// Parses "token v1 ... vm" lines. Throws Error(kParse) with the line number on
// an unparseable or non-finite value and on a dimensionality change. The first
// occurrence of a repeated token wins.
GloveLoadResult LoadGloveText(std::istream& in, const Vocabulary& vocab);
GloveLoadResult LoadGloveText(const std::string& path, const Vocabulary& vocab);

// Binary cache: magic, version, |V|, m, vocabulary hash, then |V| * m
// little-endian doubles in row-major order.
void WriteEmbeddingCache(std::ostream& out, const EmbeddingMatrix& embeddings,
                         const Vocabulary& vocab);
// Throws Error(kConfiguration) when the cache belongs to another vocabulary.
EmbeddingMatrix ReadEmbeddingCache(std::istream& in, const Vocabulary& vocab);

}  // namespace santext

#endif  // SANTEXT_EMBEDDING_H_
