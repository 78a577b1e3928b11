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

#include "santext/corpus.h"

#include <charconv>
#include <fstream>
#include <istream>

#include "santext/error.h"

namespace santext {
namespace {

std::vector<std::string> SplitTabs(const std::string& line) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    std::size_t tab = line.find('\t', start);
    if (tab == std::string::npos) {
      out.push_back(line.substr(start));
      break;
    }
    out.push_back(line.substr(start, tab - start));
    start = tab + 1;
  }
  return out;
}

void StripCarriageReturn(std::string& line) {
  if (!line.empty() && line.back() == '\r') line.pop_back();
}

std::ifstream OpenInput(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kNotFound, "cannot open " + path);
  return in;
}

std::ofstream OpenOutput(const std::string& path) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorCode::kIo, "cannot write " + path);
  return out;
}

CorpusRecord MakeRecord(std::uint64_t id, const std::string& line,
                        const CorpusFormat& format) {
  CorpusRecord rec;
  rec.id = id;
  if (format.tsv) {
    rec.columns = SplitTabs(line);
    if (format.text_column < 0 ||
        static_cast<std::size_t>(format.text_column) >= rec.columns.size()) {
      throw Error(ErrorCode::kParse,
                  "record " + std::to_string(id) + " has no column " +
                      std::to_string(format.text_column));
    }
    rec.tokens = Tokenize(rec.columns[format.text_column], format.tokenizer);
  } else {
    rec.tokens = Tokenize(line, format.tokenizer);
  }
  return rec;
}

}  // namespace

std::vector<std::vector<std::string>> Corpus::TokenLists() const {
  std::vector<std::vector<std::string>> out;
  out.reserve(records.size());
  for (const auto& r : records) out.push_back(r.tokens);
  return out;
}

Corpus ParseCorpus(std::istream& in, const CorpusFormat& format) {
  Corpus corpus;
  corpus.format = format;
  std::string line;
  if (format.header) {
    if (std::getline(in, line)) {
      StripCarriageReturn(line);
      corpus.header = line;
    }
  }
  std::uint64_t id = 0;
  while (std::getline(in, line)) {
    StripCarriageReturn(line);
    corpus.records.push_back(MakeRecord(id++, line, format));
  }
  return corpus;
}

Corpus ReadCorpus(const std::string& path, const CorpusFormat& format) {
  auto in = OpenInput(path);
  return ParseCorpus(in, format);
}

Corpus CorpusFromTexts(std::span<const std::string> texts,
                       const CorpusFormat& format) {
  Corpus corpus;
  corpus.format = format;
  corpus.records.reserve(texts.size());
  for (std::size_t i = 0; i < texts.size(); ++i) {
    corpus.records.push_back(MakeRecord(i, texts[i], format));
  }
  return corpus;
}

std::string FormatRecord(const CorpusRecord& record,
                         std::span<const std::string> tokens,
                         const CorpusFormat& format) {
  std::string text;
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    if (i > 0) text.push_back(' ');
    text += tokens[i];
  }
  if (!format.tsv) return text;
  std::string line;
  for (std::size_t c = 0; c < record.columns.size(); ++c) {
    if (c > 0) line.push_back('\t');
    line += static_cast<int>(c) == format.text_column ? text
                                                      : record.columns[c];
  }
  return line;
}

std::vector<std::string> ReadTokenList(const std::string& path) {
  auto in = OpenInput(path);
  std::vector<std::string> tokens;
  std::string line;
  while (std::getline(in, line)) {
    StripCarriageReturn(line);
    tokens.push_back(line);
  }
  return tokens;
}

void WriteTokenList(const std::string& path,
                    std::span<const std::string> tokens) {
  auto out = OpenOutput(path);
  for (const auto& t : tokens) out << t << '\n';
}

void WriteFrequencies(const std::string& path, const Vocabulary& vocab,
                      const FrequencyTable& freq) {
  auto out = OpenOutput(path);
  for (std::size_t i = 0; i < vocab.size(); ++i) {
    out << vocab.token(static_cast<TokenId>(i)) << '\t' << freq.counts[i]
        << '\n';
  }
}

FrequencyTable ReadFrequencies(const std::string& path,
                               const Vocabulary& vocab) {
  auto in = OpenInput(path);
  FrequencyTable freq;
  freq.counts.assign(vocab.size(), 0);
  std::vector<bool> seen(vocab.size(), false);
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    StripCarriageReturn(line);
    if (line.empty()) continue;
    const std::size_t tab = line.rfind('\t');
    if (tab == std::string::npos) {
      throw Error(ErrorCode::kParse, path + ":" + std::to_string(line_no) +
                                         ": expected token<TAB>count");
    }
    std::uint64_t count = 0;
    const char* first = line.data() + tab + 1;
    const char* last = line.data() + line.size();
    auto [ptr, ec] = std::from_chars(first, last, count);
    if (ec != std::errc() || ptr != last) {
      throw Error(ErrorCode::kParse,
                  path + ":" + std::to_string(line_no) + ": bad count");
    }
    auto id = vocab.Find(line.substr(0, tab));
    if (!id) continue;
    freq.counts[*id] = count;
    seen[*id] = true;
  }
  for (std::size_t i = 0; i < seen.size(); ++i) {
    if (!seen[i]) {
      throw Error(ErrorCode::kConfiguration,
                  path + ": no count for token '" +
                      vocab.token(static_cast<TokenId>(i)) + "'");
    }
  }
  return freq;
}

}  // namespace santext
