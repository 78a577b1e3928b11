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


#include "santext/embedding.h"

#include <cmath>
#include <sstream>
#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "santext/error.h"
#include "testing/fixtures.h"
#include "testing/oracles.h"

namespace santext {
namespace {

using ::santext::testing::Gen;
using ::santext::testing::OracleDistance;

ErrorCode LoadError(const std::string& text, const Vocabulary& vocab,
                    std::string* message) {
  std::istringstream in(text);
  try {
    LoadGloveText(in, vocab);
  } catch (const Error& e) {
    *message = e.what();
    return e.code();
  }
  ADD_FAILURE() << "expected a load error";
  return ErrorCode::kIo;
}

TEST(GloveTest, LoadsRowsInVocabularyOrder) {
  const Vocabulary v({"b", "a", "missing"});
  std::istringstream in("a 1 2\nzz 0 0\nb -1.5 3e-1\na 9 9\n");
  const GloveLoadResult r = LoadGloveText(in, v);
  EXPECT_EQ(r.lines_read, 4u);
  EXPECT_EQ(r.embeddings.dim(), 2);
  EXPECT_DOUBLE_EQ(r.embeddings.matrix()(0, 0), -1.5);
  EXPECT_DOUBLE_EQ(r.embeddings.matrix()(0, 1), 0.3);
  // First occurrence wins.
  EXPECT_DOUBLE_EQ(r.embeddings.matrix()(1, 0), 1.0);
  EXPECT_EQ(r.missing, std::vector<std::string>{"missing"});
}

TEST(GloveTest, CountsDuplicateVectors) {
  const Vocabulary v({"a", "b", "c"});
  std::istringstream in("a 1 2\nb 1 2\nc 0 1\n");
  EXPECT_EQ(LoadGloveText(in, v).duplicate_vectors, 1u);
}

TEST(GloveTest, ErrorsCarryLineNumbers) {
  const Vocabulary v({"a"});
  std::string msg;
  EXPECT_EQ(LoadError("a 1 2\nb 1\n", v, &msg), ErrorCode::kParse);
  EXPECT_NE(msg.find("line 2"), std::string::npos) << msg;
  EXPECT_EQ(LoadError("a 1 x\n", v, &msg), ErrorCode::kParse);
  EXPECT_NE(msg.find("line 1"), std::string::npos) << msg;
  EXPECT_EQ(LoadError("a 1 nan\n", v, &msg), ErrorCode::kParse);
  EXPECT_EQ(LoadError("c 1 2\na\n", v, &msg), ErrorCode::kParse);
  EXPECT_NE(msg.find("line 2"), std::string::npos) << msg;
}

TEST(GloveTest, MissingFileIsNotFound) {
  try {
    LoadGloveText("/nonexistent/glove.txt", Vocabulary({"a"}));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kNotFound);
  }
}

TEST(EmbeddingCacheTest, RoundTripAndStaleness) {
  Gen gen(3);
  const auto pts = gen.Embedding(6, 4);
  const auto emb = testing::ToEmbeddings(pts);
  const Vocabulary v = testing::NumberedVocab(6);
  std::stringstream buf;
  WriteEmbeddingCache(buf, *emb, v);
  const std::string bytes = buf.str();

  std::istringstream in(bytes);
  const EmbeddingMatrix back = ReadEmbeddingCache(in, v);
  EXPECT_EQ(back.matrix(), emb->matrix());
  EXPECT_EQ(back.ContentHash(), emb->ContentHash());

  std::istringstream stale(bytes);
  try {
    ReadEmbeddingCache(stale, testing::NumberedVocab(7));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kConfiguration);
  }
  std::istringstream truncated(bytes.substr(0, bytes.size() - 3));
  EXPECT_THROW(ReadEmbeddingCache(truncated, v), Error);
}

TEST(DistanceTest, PropertyMatchesComponentwiseOracle) {
  Gen gen(17);
  for (int trial = 0; trial < 50; ++trial) {
    const auto n = static_cast<std::size_t>(gen.Int(2, 20));
    const auto m = static_cast<std::size_t>(gen.Int(1, 10));
    const auto pts = gen.Embedding(n, m, gen.Real(0.1, 10));
    const auto emb = testing::ToEmbeddings(pts);
    const auto pair = emb->PairwiseDistances();
    std::vector<TokenId> all(n);
    for (std::size_t i = 0; i < n; ++i) all[i] = static_cast<TokenId>(i);
    for (std::size_t i = 0; i < n; ++i) {
      const auto row = emb->DistancesFrom(static_cast<TokenId>(i), all);
      ASSERT_EQ(pair(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i)), 0.0);
      for (std::size_t j = 0; j < n; ++j) {
        const double want = OracleDistance(pts[i], pts[j]);
        const auto ii = static_cast<Eigen::Index>(i);
        const auto jj = static_cast<Eigen::Index>(j);
        ASSERT_NEAR(pair(ii, jj), want, 1e-12 * (1 + want));
        ASSERT_EQ(pair(ii, jj), pair(jj, ii));
        ASSERT_NEAR(row[jj], want, 1e-12 * (1 + want));
        ASSERT_NEAR(Distance(static_cast<TokenId>(i), static_cast<TokenId>(j), *emb),
                    want, 1e-12 * (1 + want));
      }
    }
  }
}

TEST(DistanceTest, TemplatedOnScalar) {
  Embeddings<float>::Matrix m(2, 2);
  m << 0.f, 0.f, 3.f, 4.f;
  const Embeddings<float> e(m);
  EXPECT_FLOAT_EQ(e.Distance(0, 1), 5.f);
}

}  // namespace
}  // namespace santext
