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

#ifndef SANTEXT_ATTACK_H_
#define SANTEXT_ATTACK_H_

#include <cstdint>
#include <iosfwd>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

namespace santext {

inline constexpr std::string_view kMaskToken = "[MASK]";
inline constexpr std::string_view kBeginToken = "<s>";
inline constexpr std::string_view kEndToken = "</s>";

// A document with one position hidden. at() returns kMaskToken there and
// sentinels outside the document.
class MaskedSequence {
 public:
  MaskedSequence(std::uint64_t doc_id, std::span<const std::string> tokens,
                 std::size_t masked)
      : doc_id_(doc_id), tokens_(tokens), masked_(masked) {}

  std::uint64_t doc_id() const { return doc_id_; }
  std::size_t size() const { return tokens_.size(); }
  std::size_t masked_position() const { return masked_; }
  std::string_view at(std::ptrdiff_t i) const {
    if (i < 0) return kBeginToken;
    if (static_cast<std::size_t>(i) >= tokens_.size()) return kEndToken;
    if (static_cast<std::size_t>(i) == masked_) return kMaskToken;
    return tokens_[static_cast<std::size_t>(i)];
  }

 private:
  std::uint64_t doc_id_;
  std::span<const std::string> tokens_;
  std::size_t masked_;
};

class Predictor {
 public:
  virtual ~Predictor() = default;
  // Guess for the masked token. Deterministic for a given context.
  virtual std::string Predict(const MaskedSequence& context) const = 0;
};

// Count-based center-token predictor over a symmetric window.
//   order 3: (left, right) -> center, backing off to
//   order 2: left -> center and right -> center counts summed, backing off to
//   order 1: the corpus-wide mode token.
// Count ties go to the smaller token string.
class NgramPredictor : public Predictor {
 public:
  int order() const { return order_; }
  const std::string& mode_token() const { return mode_; }
  std::string Predict(const MaskedSequence& context) const override;

 private:
  friend NgramPredictor TrainNgramPredictor(
      std::span<const std::vector<std::string>> corpus, int order);
  using Counts = std::unordered_map<std::string, std::uint64_t>;

  int order_ = 1;
  std::string mode_;
  std::unordered_map<std::string, std::string> best_by_pair_;
  std::unordered_map<std::string, Counts> by_left_;
  std::unordered_map<std::string, Counts> by_right_;
};

// Throws Error(kInvalidArgument) for an empty corpus or order outside 1..3.
NgramPredictor TrainNgramPredictor(
    std::span<const std::vector<std::string>> corpus, int order);

// Predictions produced elsewhere (e.g. by a masked language model), one JSON
// object per line: {"doc_id": 0, "position": 3, "predicted_token": "the"}.
class ExternalPredictor : public Predictor {
 public:
  static ExternalPredictor FromJsonLines(std::istream& in);
  static ExternalPredictor FromFile(const std::string& path);

  std::size_t size() const { return predictions_.size(); }
  // Throws Error(kNotFound) when the file has no record for the position.
  std::string Predict(const MaskedSequence& context) const override;

 private:
  std::map<std::pair<std::uint64_t, std::uint64_t>, std::string> predictions_;
};

struct AttackReport {
  std::uint64_t total_positions = 0;
  std::uint64_t matched = 0;
  // 1 - matched / total_positions; 1 when there are no positions.
  double defense_rate = 1.0;
};

// Masks each position of each sanitized document in turn and compares the
// prediction with the raw token at that position. Document i in both spans
// has id i. Throws Error(kMisaligned) naming the first document whose lengths
// differ.
AttackReport RunAttack(std::span<const std::vector<std::string>> raw,
                       std::span<const std::vector<std::string>> sanitized,
                       const Predictor& predictor, int threads = 1);

}  // namespace santext

#endif  // SANTEXT_ATTACK_H_
