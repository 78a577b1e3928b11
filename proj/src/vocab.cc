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

#include "santext/vocab.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <utility>

#include "santext/error.h"
#include "santext/hashing.h"
#include "santext/parallel.h"

namespace santext {
namespace {

// Length in bytes of the whitespace code point starting at text[i], or 0.
std::size_t WhitespaceLength(std::string_view text, std::size_t i) {
  const auto byte = [&](std::size_t k) {
    return k < text.size() ? static_cast<unsigned char>(text[k]) : 0u;
  };
  const unsigned c0 = byte(i);
  if (c0 == ' ' || (c0 >= 0x09 && c0 <= 0x0d)) return 1;
  if (c0 == 0xc2) {
    const unsigned c1 = byte(i + 1);
    if (c1 == 0x85 || c1 == 0xa0) return 2;
    return 0;
  }
  if (c0 == 0xe1) {
    if (byte(i + 1) == 0x9a && byte(i + 2) == 0x80) return 3;  // U+1680
    return 0;
  }
  if (c0 == 0xe2) {
    const unsigned c1 = byte(i + 1);
    const unsigned c2 = byte(i + 2);
    if (c1 == 0x80 && ((c2 >= 0x80 && c2 <= 0x8a) || c2 == 0xa8 ||
                       c2 == 0xa9 || c2 == 0xaf)) {
      return 3;  // U+2000..U+200A, U+2028, U+2029, U+202F
    }
    if (c1 == 0x81 && c2 == 0x9f) return 3;  // U+205F
    return 0;
  }
  if (c0 == 0xe3) {
    if (byte(i + 1) == 0x80 && byte(i + 2) == 0x80) return 3;  // U+3000
    return 0;
  }
  return 0;
}

bool IsAsciiPunct(char c) {
  const auto u = static_cast<unsigned char>(c);
  return (u >= 0x21 && u <= 0x2f) || (u >= 0x3a && u <= 0x40) ||
         (u >= 0x5b && u <= 0x60) || (u >= 0x7b && u <= 0x7e);
}

std::string Lowercase(std::string_view s) {
  std::string out(s);
  for (char& c : out) {
    if (c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');
  }
  return out;
}

std::string_view StripPunctuation(std::string_view token) {
  std::size_t begin = 0;
  std::size_t end = token.size();
  while (begin < end && IsAsciiPunct(token[begin])) ++begin;
  while (end > begin && IsAsciiPunct(token[end - 1])) --end;
  if (begin == end) return token;
  return token.substr(begin, end - begin);
}

struct ChunkCounts {
  std::vector<std::string> first_seen;
  std::unordered_map<std::string, std::uint64_t> counts;
  std::uint64_t rejected = 0;
};

}  // namespace

std::optional<TokenizerMode> ParseTokenizerMode(std::string_view name) {
  if (name == "whitespace") return TokenizerMode::kWhitespace;
  if (name == "pretokenized") return TokenizerMode::kPretokenized;
  return std::nullopt;
}

std::string_view ToString(TokenizerMode mode) {
  return mode == TokenizerMode::kWhitespace ? "whitespace" : "pretokenized";
}

std::vector<std::string> Tokenize(std::string_view text, TokenizerMode mode) {
  std::vector<std::string> tokens;
  std::size_t i = 0;
  while (i < text.size()) {
    if (std::size_t ws = WhitespaceLength(text, i); ws > 0) {
      i += ws;
      continue;
    }
    std::size_t j = i;
    while (j < text.size() && WhitespaceLength(text, j) == 0) ++j;
    std::string_view raw = text.substr(i, j - i);
    if (mode == TokenizerMode::kWhitespace) raw = StripPunctuation(raw);
    tokens.push_back(Lowercase(raw));
    i = j;
  }
  return tokens;
}

Vocabulary::Vocabulary(std::vector<std::string> tokens)
    : tokens_(std::move(tokens)) {
  index_.reserve(tokens_.size());
  for (std::size_t i = 0; i < tokens_.size(); ++i) {
    if (tokens_[i].empty()) {
      throw Error(ErrorCode::kInvalidArgument,
                  "empty token at vocabulary position " + std::to_string(i));
    }
    if (!index_.emplace(tokens_[i], static_cast<TokenId>(i)).second) {
      throw Error(ErrorCode::kInvalidArgument,
                  "duplicate vocabulary token '" + tokens_[i] + "'");
    }
  }
}

std::optional<TokenId> Vocabulary::Find(const std::string& token) const {
  auto it = index_.find(token);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::uint64_t Vocabulary::ContentHash() const {
  Fnv1a h;
  h.UpdateU64(tokens_.size());
  for (const auto& t : tokens_) {
    h.Update(t);
    h.Update("\n", 1);
  }
  return h.digest();
}

std::uint64_t FrequencyTable::total() const {
  return std::accumulate(counts.begin(), counts.end(), std::uint64_t{0});
}

VocabBuildResult BuildVocab(std::span<const std::vector<std::string>> corpus,
                            const VocabBuildOptions& options) {
  if (corpus.empty() && !options.external_vocab) {
    throw Error(ErrorCode::kConfiguration,
                "empty corpus and no external vocabulary");
  }

  const std::size_t chunks = ChunkCount(corpus.size(), options.threads);
  std::vector<ChunkCounts> partial(chunks);
  ParallelFor(corpus.size(), options.threads,
              [&](std::size_t begin, std::size_t end, std::size_t chunk) {
                ChunkCounts& local = partial[chunk];
                for (std::size_t d = begin; d < end; ++d) {
                  for (const auto& tok : corpus[d]) {
                    auto [it, inserted] = local.counts.try_emplace(tok, 0);
                    if (inserted) local.first_seen.push_back(tok);
                    ++it->second;
                  }
                }
              });

  // Chunk-order merge keeps first-appearance order.
  std::vector<std::string> order;
  std::unordered_map<std::string, std::uint64_t> counts;
  for (auto& chunk : partial) {
    for (auto& tok : chunk.first_seen) {
      auto [it, inserted] = counts.try_emplace(tok, 0);
      if (inserted) order.push_back(tok);
      it->second += chunk.counts[tok];
    }
  }

  VocabBuildResult result;
  std::vector<std::string> tokens;
  if (options.external_vocab) {
    tokens = *options.external_vocab;
  } else {
    tokens.reserve(order.size());
    for (auto& tok : order) {
      if (!options.token_filter || options.token_filter(tok)) {
        tokens.push_back(tok);
      }
    }
  }
  if (tokens.empty()) {
    throw Error(ErrorCode::kConfiguration, "vocabulary is empty");
  }
  result.vocabulary = Vocabulary(std::move(tokens));

  result.frequencies.counts.assign(result.vocabulary.size(), 0);
  for (const auto& tok : order) {
    const std::uint64_t c = counts[tok];
    if (auto id = result.vocabulary.Find(tok)) {
      result.frequencies.counts[*id] = c;
      result.corpus_tokens += c;
    } else {
      result.oov_occurrences += c;
      ++result.oov_types;
    }
  }
  return result;
}

VocabBuildResult DropTokens(const VocabBuildResult& built,
                            std::span<const std::string> drop) {
  std::unordered_map<std::string, bool> dropped;
  for (const auto& t : drop) dropped[t] = true;

  VocabBuildResult out;
  std::vector<std::string> kept;
  out.oov_occurrences = built.oov_occurrences;
  out.oov_types = built.oov_types;
  for (std::size_t i = 0; i < built.vocabulary.size(); ++i) {
    const std::string& tok = built.vocabulary.token(static_cast<TokenId>(i));
    const std::uint64_t c = built.frequencies.counts[i];
    if (dropped.count(tok)) {
      out.oov_occurrences += c;
      if (c > 0) ++out.oov_types;
      continue;
    }
    kept.push_back(tok);
    out.frequencies.counts.push_back(c);
    out.corpus_tokens += c;
  }
  if (kept.empty()) {
    throw Error(ErrorCode::kConfiguration,
                "vocabulary is empty after dropping tokens without embeddings");
  }
  out.vocabulary = Vocabulary(std::move(kept));
  return out;
}

SensitivityPartition::SensitivityPartition(std::vector<bool> sensitive_flags,
                                           double w)
    : flags_(std::move(sensitive_flags)), w_(w) {
  for (std::size_t i = 0; i < flags_.size(); ++i) {
    (flags_[i] ? sensitive_ : nonsensitive_).push_back(static_cast<TokenId>(i));
  }
}

std::uint64_t SensitivityPartition::ContentHash() const {
  Fnv1a h;
  h.UpdateU64(flags_.size());
  for (bool f : flags_) h.Update(f ? "1" : "0", 1);
  return h.digest();
}

SensitivityPartition PartitionSensitivity(const Vocabulary& vocab,
                                          const FrequencyTable& freq,
                                          double w) {
  if (!(w >= 0.0 && w <= 1.0)) {
    throw Error(ErrorCode::kInvalidArgument, "w must lie in [0, 1]");
  }
  if (freq.counts.size() != vocab.size()) {
    throw Error(ErrorCode::kInvalidArgument,
                "frequency table does not match the vocabulary size");
  }
  const std::size_t n = vocab.size();
  // Offset for representation error, e.g. 0.29 * 100.
  const auto target = static_cast<std::size_t>(
      std::floor(w * static_cast<double>(n) + 1e-9));

  std::vector<TokenId> order(n);
  std::iota(order.begin(), order.end(), TokenId{0});
  std::sort(order.begin(), order.end(), [&](TokenId a, TokenId b) {
    if (freq.counts[a] != freq.counts[b]) return freq.counts[a] < freq.counts[b];
    return vocab.token(a) < vocab.token(b);
  });

  std::vector<bool> flags(n, false);
  if (target > 0) {
    const std::uint64_t boundary = freq.counts[order[std::min(target, n) - 1]];
    for (TokenId id : order) {
      if (freq.counts[id] > boundary) break;
      flags[id] = true;
    }
  }
  return SensitivityPartition(std::move(flags), w);
}

}  // namespace santext
