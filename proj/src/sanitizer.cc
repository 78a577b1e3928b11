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

#include "santext/sanitizer.h"

#include <chrono>
#include <fstream>

#include "santext/error.h"
#include "santext/parallel.h"

namespace santext {

Document EncodeRecord(const CorpusRecord& record, const Vocabulary& vocab) {
  Document doc;
  doc.id = record.id;
  doc.tokens.reserve(record.tokens.size());
  for (const auto& tok : record.tokens) {
    if (auto id = vocab.Find(tok)) doc.tokens.push_back(*id);
  }
  return doc;
}

SanitizedCorpus SanitizeCorpus(const Corpus& corpus, const Vocabulary& vocab,
                               const ProbabilityModel& model,
                               std::uint64_t seed, int threads) {
  if (model.vocab_size() != vocab.size()) {
    throw Error(ErrorCode::kConfiguration,
                "model and vocabulary sizes differ");
  }
  const auto start = std::chrono::steady_clock::now();
  SanitizedCorpus out;
  out.header = corpus.header;
  out.lines.resize(corpus.records.size());
  std::vector<SanitizeStats> partial(ChunkCount(corpus.records.size(), threads));

  ParallelFor(corpus.records.size(), threads,
              [&](std::size_t begin, std::size_t end, std::size_t chunk) {
                SanitizeStats& stats = partial[chunk];
                std::vector<std::string> tokens;
                for (std::size_t r = begin; r < end; ++r) {
                  const CorpusRecord& rec = corpus.records[r];
                  const Document doc = EncodeRecord(rec, vocab);
                  const SanitizedDocument san = SanitizeDocument(doc, model, seed);
                  tokens.clear();
                  std::size_t k = 0;
                  for (const auto& tok : rec.tokens) {
                    if (vocab.Contains(tok)) {
                      const TokenId in = doc.tokens[k];
                      const TokenId y = san.tokens[k];
                      if (in == y) ++stats.self_substitutions;
                      tokens.push_back(vocab.token(y));
                      ++k;
                    } else {
                      ++stats.oov_tokens;
                      tokens.push_back(tok);
                    }
                  }
                  stats.tokens += rec.tokens.size();
                  ++stats.documents;
                  out.lines[r] = FormatRecord(rec, tokens, corpus.format);
                }
              });

  for (const auto& s : partial) {
    out.stats.documents += s.documents;
    out.stats.tokens += s.tokens;
    out.stats.oov_tokens += s.oov_tokens;
    out.stats.self_substitutions += s.self_substitutions;
  }
  out.stats.seconds = std::chrono::duration<double>(
                          std::chrono::steady_clock::now() - start)
                          .count();
  return out;
}

void WriteSanitizedCorpus(const std::string& path,
                          const SanitizedCorpus& corpus) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::kIo, "cannot write " + path);
  if (corpus.header) out << *corpus.header << '\n';
  for (const auto& line : corpus.lines) out << line << '\n';
  if (!out) throw Error(ErrorCode::kIo, "failed writing " + path);
}

}  // namespace santext
