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

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "santext/error.h"

namespace santext {
namespace {

std::string TempPath(const std::string& name) {
  return (std::filesystem::temp_directory_path() /
          ("santext_corpus_" + name))
      .string();
}

TEST(CorpusTest, PlainLinesBecomeRecords) {
  std::istringstream in("A b\n\nc d e\n");
  const Corpus c = ParseCorpus(in, CorpusFormat{});
  ASSERT_EQ(c.records.size(), 3u);
  EXPECT_EQ(c.records[0].tokens, (std::vector<std::string>{"a", "b"}));
  EXPECT_TRUE(c.records[1].tokens.empty());
  EXPECT_EQ(c.records[2].id, 2u);
}

TEST(CorpusTest, TsvKeepsOtherColumns) {
  std::istringstream in("sentence\tlabel\nGreat film\t1\nawful\t0\n");
  CorpusFormat f;
  f.tsv = true;
  f.header = true;
  const Corpus c = ParseCorpus(in, f);
  ASSERT_TRUE(c.header.has_value());
  EXPECT_EQ(*c.header, "sentence\tlabel");
  ASSERT_EQ(c.records.size(), 2u);
  EXPECT_EQ(c.records[0].tokens, (std::vector<std::string>{"great", "film"}));
  const std::vector<std::string> replaced = {"fine", "movie"};
  EXPECT_EQ(FormatRecord(c.records[0], replaced, f), "fine movie\t1");
}

TEST(CorpusTest, TsvMissingColumnIsParseError) {
  std::istringstream in("only\n");
  CorpusFormat f;
  f.tsv = true;
  f.text_column = 1;
  try {
    ParseCorpus(in, f);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kParse);
  }
}

TEST(CorpusTest, CrLfIsStripped) {
  std::istringstream in("a b\r\nc\r\n");
  const Corpus c = ParseCorpus(in, CorpusFormat{});
  EXPECT_EQ(c.records[0].tokens.back(), "b");
  EXPECT_EQ(c.records[1].tokens, std::vector<std::string>{"c"});
}

TEST(CorpusTest, FromTextsUsesListIndex) {
  const std::vector<std::string> texts = {"x y", "z"};
  const Corpus c = CorpusFromTexts(texts, CorpusFormat{});
  EXPECT_EQ(c.records[1].id, 1u);
  EXPECT_EQ(c.TokenLists()[0], (std::vector<std::string>{"x", "y"}));
}

TEST(CorpusTest, TokenListAndFrequencyRoundTrip) {
  const std::string vpath = TempPath("vocab.txt");
  const std::string fpath = TempPath("freq.tsv");
  const std::vector<std::string> tokens = {"alpha", "beta", "gamma"};
  WriteTokenList(vpath, tokens);
  EXPECT_EQ(ReadTokenList(vpath), tokens);
  const Vocabulary v(tokens);
  WriteFrequencies(fpath, v, FrequencyTable{{3, 0, 7}});
  EXPECT_EQ(ReadFrequencies(fpath, v).counts,
            (std::vector<std::uint64_t>{3, 0, 7}));
  std::filesystem::remove(vpath);
  std::filesystem::remove(fpath);
}

TEST(CorpusTest, FrequencyErrors) {
  const std::string fpath = TempPath("bad_freq.tsv");
  const Vocabulary v({"a", "b"});
  {
    std::ofstream(fpath) << "a\t1\nb\tmany\n";
  }
  try {
    ReadFrequencies(fpath, v);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kParse);
    EXPECT_NE(std::string(e.what()).find(":2"), std::string::npos) << e.what();
  }
  {
    std::ofstream(fpath) << "a\t1\n";
  }
  try {
    ReadFrequencies(fpath, v);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kConfiguration);
  }
  std::filesystem::remove(fpath);
}

TEST(CorpusTest, MissingFileIsNotFound) {
  try {
    ReadCorpus("/nonexistent/santext/corpus.txt", CorpusFormat{});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kNotFound);
  }
}

}  // namespace
}  // namespace santext
