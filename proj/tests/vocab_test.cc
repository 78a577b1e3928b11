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
#include <map>
#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "santext/error.h"
#include "testing/oracles.h"

namespace santext {
namespace {

using ::santext::testing::Gen;
using Docs = std::vector<std::vector<std::string>>;

TEST(TokenizeTest, PretokenizedLowercasesAndSplits) {
  EXPECT_EQ(Tokenize("It 's  A\tfine\nday .", TokenizerMode::kPretokenized),
            (std::vector<std::string>{"it", "'s", "a", "fine", "day", "."}));
}

TEST(TokenizeTest, WhitespaceStripsEdgePunctuation) {
  EXPECT_EQ(Tokenize("\"Hello,\" she said... (twice)", TokenizerMode::kWhitespace),
            (std::vector<std::string>{"hello", "she", "said", "twice"}));
  EXPECT_EQ(Tokenize("wait ... what?!", TokenizerMode::kWhitespace),
            (std::vector<std::string>{"wait", "...", "what"}));
  EXPECT_EQ(Tokenize("don't e-mail", TokenizerMode::kWhitespace),
            (std::vector<std::string>{"don't", "e-mail"}));
}

TEST(TokenizeTest, UnicodeWhitespaceSeparates) {
  // U+00A0 no-break space and U+3000 ideographic space.
  EXPECT_EQ(Tokenize("a\xC2\xA0" "b\xE3\x80\x80" "c", TokenizerMode::kPretokenized),
            (std::vector<std::string>{"a", "b", "c"}));
  EXPECT_TRUE(Tokenize("  \t ", TokenizerMode::kWhitespace).empty());
}

TEST(TokenizeTest, ModeNamesRoundTrip) {
  for (auto mode : {TokenizerMode::kWhitespace, TokenizerMode::kPretokenized}) {
    EXPECT_EQ(ParseTokenizerMode(ToString(mode)), mode);
  }
  EXPECT_FALSE(ParseTokenizerMode("bpe").has_value());
}

TEST(VocabularyTest, RejectsDuplicatesAndEmptyTokens) {
  EXPECT_THROW(Vocabulary({"a", "b", "a"}), Error);
  EXPECT_THROW(Vocabulary({"a", ""}), Error);
  const Vocabulary v({"x", "y"});
  EXPECT_EQ(v.Find("y"), TokenId{1});
  EXPECT_FALSE(v.Find("z").has_value());
  EXPECT_NE(v.ContentHash(), Vocabulary({"y", "x"}).ContentHash());
}

TEST(BuildVocabTest, CountsInFirstAppearanceOrder) {
  const Docs docs = {{"b", "a", "b"}, {"c", "a"}, {"b"}};
  const VocabBuildResult r = BuildVocab(docs, {});
  ASSERT_EQ(r.vocabulary.size(), 3u);
  EXPECT_EQ(r.vocabulary.token(0), "b");
  EXPECT_EQ(r.vocabulary.token(1), "a");
  EXPECT_EQ(r.vocabulary.token(2), "c");
  EXPECT_EQ(r.frequencies.counts, (std::vector<std::uint64_t>{3, 2, 1}));
  EXPECT_EQ(r.corpus_tokens, 6u);
  EXPECT_EQ(r.oov_occurrences, 0u);
}

TEST(BuildVocabTest, FilterAndExternalModes) {
  const Docs docs = {{"cat", "zzq", "dog"}, {"zzq", "cat"}};
  VocabBuildOptions glove;
  glove.token_filter = [](const std::string& t) { return t != "zzq"; };
  const VocabBuildResult g = BuildVocab(docs, glove);
  EXPECT_EQ(g.vocabulary.size(), 2u);
  EXPECT_EQ(g.oov_occurrences, 2u);
  EXPECT_EQ(g.oov_types, 1u);

  VocabBuildOptions ext;
  ext.external_vocab = std::vector<std::string>{"dog", "bird", "cat"};
  const VocabBuildResult e = BuildVocab(docs, ext);
  EXPECT_EQ(e.vocabulary.token(1), "bird");
  EXPECT_EQ(e.frequencies.counts, (std::vector<std::uint64_t>{1, 0, 2}));
  EXPECT_EQ(e.oov_occurrences, 2u);
}

TEST(BuildVocabTest, EmptyResultIsConfigurationError) {
  const Docs docs = {{"zzq"}};
  VocabBuildOptions options;
  options.token_filter = [](const std::string&) { return false; };
  try {
    BuildVocab(docs, options);
    FAIL() << "expected an error";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kConfiguration);
  }
}

TEST(BuildVocabTest, PropertyThreadCountDoesNotMatter) {
  Gen gen(11);
  for (int trial = 0; trial < 30; ++trial) {
    Docs docs(static_cast<std::size_t>(gen.Int(1, 40)));
    for (auto& d : docs) {
      d.resize(static_cast<std::size_t>(gen.Int(0, 12)));
      for (auto& t : d) t = gen.Word(1, 2);
    }
    bool any = false;
    for (const auto& d : docs) any = any || !d.empty();
    if (!any) docs[0].push_back("a");

    VocabBuildOptions one;
    VocabBuildOptions many;
    many.threads = gen.Int(2, 8);
    const VocabBuildResult a = BuildVocab(docs, one);
    const VocabBuildResult b = BuildVocab(docs, many);
    ASSERT_EQ(a.vocabulary.ContentHash(), b.vocabulary.ContentHash());
    ASSERT_EQ(a.frequencies.counts, b.frequencies.counts);

    // Oracle: plain map count.
    std::map<std::string, std::uint64_t> expect;
    for (const auto& d : docs) {
      for (const auto& t : d) ++expect[t];
    }
    ASSERT_EQ(a.vocabulary.size(), expect.size());
    for (const auto& [tok, count] : expect) {
      ASSERT_EQ(a.frequencies.counts[*a.vocabulary.Find(tok)], count);
    }
  }
}

TEST(DropTokensTest, ReindexesCounts) {
  const Docs docs = {{"a", "b", "c", "b"}};
  const VocabBuildResult r = BuildVocab(docs, {});
  const std::vector<std::string> drop = {"b"};
  const VocabBuildResult d = DropTokens(r, drop);
  EXPECT_EQ(d.vocabulary.tokens().size(), 2u);
  EXPECT_EQ(d.frequencies.counts, (std::vector<std::uint64_t>{1, 1}));
  EXPECT_EQ(d.oov_occurrences, r.oov_occurrences + 2);
}

TEST(PartitionTest, RarestTokensAreSensitive) {
  const Vocabulary v({"the", "cat", "sat", "zebra", "quark"});
  FrequencyTable f{{100, 10, 20, 1, 2}};
  const SensitivityPartition p = PartitionSensitivity(v, f, 0.4);
  EXPECT_TRUE(p.is_sensitive(3));
  EXPECT_TRUE(p.is_sensitive(4));
  EXPECT_FALSE(p.is_sensitive(1));
  EXPECT_EQ(p.sensitive_ids().size(), 2u);
  EXPECT_EQ(p.nonsensitive_ids().size(), 3u);
}

TEST(PartitionTest, BoundaryTiesAreIncluded) {
  const Vocabulary v({"a", "b", "c", "d"});
  FrequencyTable f{{5, 1, 1, 9}};
  // floor(0.25 * 4) = 1 but b and c tie at the boundary count.
  const SensitivityPartition p = PartitionSensitivity(v, f, 0.25);
  EXPECT_EQ(p.sensitive_ids().size(), 2u);
  EXPECT_EQ(PartitionSensitivity(v, f, 0.0).sensitive_ids().size(), 0u);
  EXPECT_EQ(PartitionSensitivity(v, f, 1.0).sensitive_ids().size(), 4u);
}

TEST(PartitionTest, HalfOfFourTokens) {
  const Vocabulary v({"a", "b", "c", "d"});
  const SensitivityPartition distinct = PartitionSensitivity(v, FrequencyTable{{1, 1, 2, 3}}, 0.5);
  EXPECT_EQ(std::vector<TokenId>(distinct.sensitive_ids().begin(), distinct.sensitive_ids().end()),
            (std::vector<TokenId>{0, 1}));
  const SensitivityPartition tied = PartitionSensitivity(v, FrequencyTable{{1, 2, 2, 3}}, 0.5);
  EXPECT_EQ(std::vector<TokenId>(tied.sensitive_ids().begin(), tied.sensitive_ids().end()),
            (std::vector<TokenId>{0, 1, 2}));
}

TEST(PartitionTest, PropertyMatchesOrderStatisticOracle) {
  Gen gen(5);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = static_cast<std::size_t>(gen.Int(1, 60));
    std::vector<std::string> toks;
    for (std::size_t i = 0; i < n; ++i) toks.push_back("t" + std::to_string(i));
    const Vocabulary v(toks);
    FrequencyTable f{gen.Counts(n, gen.Int(1, 10))};
    const double w = gen.Pick(std::vector<double>{0.0, 0.1, 0.3, 0.5, 0.6, 0.9, 1.0});
    const SensitivityPartition p = PartitionSensitivity(v, f, w);

    const auto k = static_cast<std::size_t>(std::floor(w * n + 1e-9));
    std::vector<std::uint64_t> sorted = f.counts;
    std::sort(sorted.begin(), sorted.end());
    std::size_t expect = 0;
    for (std::size_t i = 0; i < n; ++i) {
      const bool s = k > 0 && f.counts[i] <= sorted[k - 1];
      expect += s;
      ASSERT_EQ(p.is_sensitive(static_cast<TokenId>(i)), s);
    }
    ASSERT_GE(p.sensitive_ids().size(), k);
    ASSERT_EQ(p.sensitive_ids().size() + p.nonsensitive_ids().size(), n);
    ASSERT_TRUE(std::is_sorted(p.sensitive_ids().begin(), p.sensitive_ids().end()));
    ASSERT_EQ(p.sensitive_ids().size(), expect);
  }
}

TEST(PartitionTest, RejectsBadInputs) {
  const Vocabulary v({"a"});
  EXPECT_THROW(PartitionSensitivity(v, FrequencyTable{{1}}, 1.5), Error);
  EXPECT_THROW(PartitionSensitivity(v, FrequencyTable{{1, 2}}, 0.5), Error);
}

}  // namespace
}  // namespace santext
