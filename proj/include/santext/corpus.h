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

#ifndef SANTEXT_CORPUS_H_
#define SANTEXT_CORPUS_H_

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "santext/vocab.h"

namespace santext {

struct CorpusFormat {
  TokenizerMode tokenizer = TokenizerMode::kPretokenized;
  // Tab-separated records; only `text_column` is tokenized, every other
  // column is passed through untouched.
  bool tsv = false;
  int text_column = 0;
  // First line is a header and is copied verbatim.
  bool header = false;
};

struct CorpusRecord {
  // 0-based record number, header excluded. Used as the document id that
  // seeds the record's random stream.
  std::uint64_t id = 0;
  std::vector<std::string> columns;
  std::vector<std::string> tokens;
};

struct Corpus {
  CorpusFormat format;
  std::optional<std::string> header;
  std::vector<CorpusRecord> records;

  std::vector<std::vector<std::string>> TokenLists() const;
};

Corpus ParseCorpus(std::istream& in, const CorpusFormat& format);
Corpus ReadCorpus(const std::string& path, const CorpusFormat& format);
// Documents given as raw strings; list index becomes the record id.
Corpus CorpusFromTexts(std::span<const std::string> texts,
                       const CorpusFormat& format);

// Rebuilds an output line: the text column becomes the space-joined tokens.
std::string FormatRecord(const CorpusRecord& record,
                         std::span<const std::string> tokens,
                         const CorpusFormat& format);

// One token per line; line number is the id.
std::vector<std::string> ReadTokenList(const std::string& path);
void WriteTokenList(const std::string& path,
                    std::span<const std::string> tokens);
// token<TAB>count, in vocabulary order.
void WriteFrequencies(const std::string& path, const Vocabulary& vocab,
                      const FrequencyTable& freq);
FrequencyTable ReadFrequencies(const std::string& path,
                               const Vocabulary& vocab);

}  // namespace santext

#endif  // SANTEXT_CORPUS_H_
