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

#ifndef SANTEXT_SANITIZER_H_
#define SANTEXT_SANITIZER_H_

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "santext/corpus.h"
#include "santext/mechanism.h"
#include "santext/vocab.h"

namespace santext {

struct SanitizeStats {
  std::uint64_t documents = 0;
  std::uint64_t tokens = 0;
  // Tokens outside the vocabulary, copied through unchanged.
  std::uint64_t oov_tokens = 0;
  // In-vocabulary tokens whose draw returned the input token.
  std::uint64_t self_substitutions = 0;
  double seconds = 0.0;
};

struct SanitizedCorpus {
  std::optional<std::string> header;
  std::vector<std::string> lines;
  SanitizeStats stats;
};

// Encodes one record's tokens, dropping OOV positions.
Document EncodeRecord(const CorpusRecord& record, const Vocabulary& vocab);

// Line-aligned sanitization of a whole corpus. Output depends only on
// (corpus, vocabulary, model, seed), never on `threads`.
SanitizedCorpus SanitizeCorpus(const Corpus& corpus, const Vocabulary& vocab,
                               const ProbabilityModel& model,
                               std::uint64_t seed, int threads = 1);

void WriteSanitizedCorpus(const std::string& path,
                          const SanitizedCorpus& corpus);

}  // namespace santext

#endif  // SANTEXT_SANITIZER_H_
