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


#include "santext/attack.h"

#include <map>
#include <sstream>
#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "santext/error.h"
#include "testing/oracles.h"

namespace santext {
namespace {

using ::santext::testing::Gen;
using Docs = std::vector<std::vector<std::string>>;

class OraclePredictor : public Predictor {
 public:
  explicit OraclePredictor(const Docs& raw) : raw_(raw) {}
  std::string Predict(const MaskedSequence& c) const override {
    return raw_[c.doc_id()][c.masked_position()];
  }

 private:
  const Docs& raw_;
};

class ConstantPredictor : public Predictor {
 public:
  std::string Predict(const MaskedSequence&) const override { return "<none>"; }
};

TEST(MaskedSequenceTest, BoundariesAndMask) {
  const std::vector<std::string> t = {"a", "b", "c"};
  const MaskedSequence s(4, t, 1);
  EXPECT_EQ(s.at(-1), kBeginToken);
  EXPECT_EQ(s.at(0), "a");
  EXPECT_EQ(s.at(1), kMaskToken);
  EXPECT_EQ(s.at(3), kEndToken);
}

TEST(RunAttackTest, TrivialPredictors) {
  const Docs raw = {{"a", "b"}, {"c"}};
  const auto oracle = RunAttack(raw, raw, OraclePredictor(raw));
  EXPECT_EQ(oracle.defense_rate, 0.0);
  EXPECT_EQ(oracle.matched, 3u);
  const auto constant = RunAttack(raw, raw, ConstantPredictor());
  EXPECT_EQ(constant.defense_rate, 1.0);
  EXPECT_EQ(RunAttack(Docs{}, Docs{}, ConstantPredictor()).defense_rate, 1.0);
}

TEST(RunAttackTest, UnigramOnRepeatedToken) {
  const Docs raw = {{"a", "a", "a", "b"}};
  const auto model = TrainNgramPredictor(raw, 1);
  EXPECT_EQ(model.mode_token(), "a");
  const auto r = RunAttack(raw, raw, model);
  EXPECT_EQ(r.total_positions, 4u);
  EXPECT_EQ(r.matched, 3u);
  EXPECT_DOUBLE_EQ(r.defense_rate, 0.25);
}

TEST(RunAttackTest, MisalignmentNamesDocument) {
  const Docs raw = {{"a"}, {"b", "c"}};
  const Docs san = {{"a"}, {"b"}};
  try {
    RunAttack(raw, san, ConstantPredictor());
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kMisaligned);
    EXPECT_NE(std::string(e.what()).find("document 1"), std::string::npos);
  }
  EXPECT_THROW(RunAttack(raw, Docs{{"a"}}, ConstantPredictor()), Error);
}

TEST(NgramPredictorTest, TrigramUsesBothNeighbours) {
  Docs corpus;
  for (int i = 0; i < 5; ++i) corpus.push_back({"x", "y", "z"});
  corpus.push_back({"q", "q", "q", "q", "q", "q", "q", "q", "q", "q", "q", "q",
                    "q", "q", "q", "q"});
  const auto model = TrainNgramPredictor(corpus, 3);
  const std::vector<std::string> probe = {"x", "?", "z"};
  EXPECT_EQ(model.Predict(MaskedSequence(0, probe, 1)), "y");
  EXPECT_EQ(TrainNgramPredictor(corpus, 1).Predict(MaskedSequence(0, probe, 1)), "q");
}

TEST(NgramPredictorTest, BackoffAndTies) {
  const Docs corpus = {{"a", "m", "b"}, {"a", "n", "c"}};
  const auto model = TrainNgramPredictor(corpus, 3);
  // Unseen pair (a, c): bigram counts m:1 + n:1 from the left, n:1 from the
  // right.
  EXPECT_EQ(model.Predict(MaskedSequence(0, std::vector<std::string>{"a", "?", "c"}, 1)),
            "n");
  // Unseen contexts on both sides fall back to the mode; ties break toward
  // the smaller string.
  const std::vector<std::string> unseen = {"zz", "?", "yy"};
  EXPECT_EQ(model.Predict(MaskedSequence(0, unseen, 1)), "a");
}

TEST(NgramPredictorTest, PropertyTrigramMatchesRecount) {
  Gen gen(9);
  for (int trial = 0; trial < 30; ++trial) {
    Docs corpus(static_cast<std::size_t>(gen.Int(1, 30)));
    for (auto& d : corpus) {
      d.resize(static_cast<std::size_t>(gen.Int(1, 10)));
      for (auto& t : d) t = std::string(1, static_cast<char>('a' + gen.Int(0, 4)));
    }
    const auto model = TrainNgramPredictor(corpus, 3);
    std::map<std::pair<std::string, std::string>, std::map<std::string, int>> counts;
    for (const auto& d : corpus) {
      for (std::size_t i = 0; i < d.size(); ++i) {
        const std::string l = i == 0 ? std::string(kBeginToken) : d[i - 1];
        const std::string r = i + 1 == d.size() ? std::string(kEndToken) : d[i + 1];
        ++counts[{l, r}][d[i]];
      }
    }
    for (const auto& [ctx, c] : counts) {
      std::string best;
      int best_n = -1;
      for (const auto& [tok, k] : c) {  // map order gives the smallest on ties
        if (k > best_n) {
          best = tok;
          best_n = k;
        }
      }
      std::vector<std::string> seq;
      if (ctx.first != kBeginToken) seq.push_back(ctx.first);
      const std::size_t masked = seq.size();
      seq.push_back("?");
      if (ctx.second != kEndToken) seq.push_back(ctx.second);
      ASSERT_EQ(model.Predict(MaskedSequence(0, seq, masked)), best);
    }
  }
}

TEST(NgramPredictorTest, Errors) {
  EXPECT_THROW(TrainNgramPredictor(Docs{{"a"}}, 4), Error);
  EXPECT_THROW(TrainNgramPredictor(Docs{{}}, 1), Error);
}

TEST(ExternalPredictorTest, ReadsJsonLines) {
  std::istringstream in(
      "{\"doc_id\": 0, \"position\": 0, \"predicted_token\": \"a\"}\n\n"
      "{\"doc_id\": 0, \"position\": 1, \"predicted_token\": \"x\"}\n");
  const auto ext = ExternalPredictor::FromJsonLines(in);
  EXPECT_EQ(ext.size(), 2u);
  const Docs raw = {{"a", "b"}};
  const auto r = RunAttack(raw, raw, ext);
  EXPECT_EQ(r.matched, 1u);
  EXPECT_THROW(RunAttack(Docs{{"a", "b", "c"}}, Docs{{"a", "b", "c"}}, ext), Error);

  std::istringstream bad("{\"doc_id\": 0}\n");
  try {
    ExternalPredictor::FromJsonLines(bad);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kParse);
  }
}

}  // namespace
}  // namespace santext
