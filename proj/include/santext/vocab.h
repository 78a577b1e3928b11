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

#ifndef SANTEXT_VOCAB_H_
#define SANTEXT_VOCAB_H_

#include <cstdint>
#include <functional>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace santext {

using TokenId = std::uint32_t;
inline constexpr TokenId kInvalidTokenId = std::numeric_limits<TokenId>::max();

enum class TokenizerMode {
  // Lowercase, split on Unicode whitespace, strip leading and trailing ASCII
  // punctuation from each token. A token made only of punctuation is kept
  // whole ("..." stays "...").
  kWhitespace,
  // Input is already tokenized: lowercase and split on whitespace only.
  kPretokenized,
};

std::optional<TokenizerMode> ParseTokenizerMode(std::string_view name);
std::string_view ToString(TokenizerMode mode);

std::vector<std::string> Tokenize(std::string_view text, TokenizerMode mode);

// Dense token <-> id map. Ids are 0..size()-1 in list order.
class Vocabulary {
 public:
  Vocabulary() = default;
  // Throws Error(kInvalidArgument) on empty or duplicate tokens.
  explicit Vocabulary(std::vector<std::string> tokens);

  std::size_t size() const { return tokens_.size(); }
  bool empty() const { return tokens_.empty(); }
  const std::string& token(TokenId id) const { return tokens_.at(id); }
  std::span<const std::string> tokens() const { return tokens_; }
  std::optional<TokenId> Find(const std::string& token) const;
  bool Contains(const std::string& token) const {
    return index_.count(token) != 0;
  }

  std::uint64_t ContentHash() const;

 private:
  std::vector<std::string> tokens_;
  std::unordered_map<std::string, TokenId> index_;
};

struct FrequencyTable {
  std::vector<std::uint64_t> counts;

  std::uint64_t total() const;
};

struct VocabBuildOptions {
  // When set, the vocabulary is exactly this list in this order and the
  // corpus only contributes counts.
  std::optional<std::vector<std::string>> external_vocab;
  // When set (GloVe mode), corpus tokens rejected by the filter are left out
  // of the vocabulary and counted as out-of-vocabulary.
  std::function<bool(const std::string&)> token_filter;
  int threads = 1;
};

struct VocabBuildResult {
  Vocabulary vocabulary;
  FrequencyTable frequencies;
  // In-vocabulary corpus tokens; equals frequencies.total().
  std::uint64_t corpus_tokens = 0;
  std::uint64_t oov_occurrences = 0;
  std::size_t oov_types = 0;
};

// Each corpus entry is one already-tokenized document.
VocabBuildResult BuildVocab(std::span<const std::vector<std::string>> corpus,
                            const VocabBuildOptions& options);

// Removes the listed tokens, keeping the relative order of the rest.
VocabBuildResult DropTokens(const VocabBuildResult& built,
                            std::span<const std::string> drop);

// V_S / V_N split. In this toolkit the protected outputs equal the sensitive
// inputs (V_P = V_S) and the unprotected outputs equal the non-sensitive
// inputs (V_U = V_N).
class SensitivityPartition {
 public:
  SensitivityPartition() = default;
  SensitivityPartition(std::vector<bool> sensitive_flags, double w);

  std::size_t size() const { return flags_.size(); }
  double w() const { return w_; }
  bool is_sensitive(TokenId id) const { return flags_.at(id); }
  // Sorted ascending.
  std::span<const TokenId> sensitive_ids() const { return sensitive_; }
  std::span<const TokenId> nonsensitive_ids() const { return nonsensitive_; }

  std::uint64_t ContentHash() const;

 private:
  std::vector<bool> flags_;
  std::vector<TokenId> sensitive_;
  std::vector<TokenId> nonsensitive_;
  double w_ = 0.0;
};

// Marks the floor(w * |V|) rarest tokens as sensitive, ordering by
// (count ascending, token ascending), then also marks every token whose
// count equals that of the last one taken. Throws on w outside [0, 1].
SensitivityPartition PartitionSensitivity(const Vocabulary& vocab,
                                          const FrequencyTable& freq,
                                          double w);

struct Document {
  std::uint64_t id = 0;
  std::vector<TokenId> tokens;
};

}  // namespace santext

#endif  // SANTEXT_VOCAB_H_
