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

#include <fstream>
#include <istream>

#include <json.hpp>

#include "santext/error.h"
#include "santext/parallel.h"

namespace santext {
namespace {

using Counts = std::unordered_map<std::string, std::uint64_t>;

std::string PairKey(std::string_view left, std::string_view right) {
  std::string key(left);
  key.push_back('\x1f');
  key.append(right);
  return key;
}

// Highest count, ties to the smaller string. Empty map gives "".
std::string ArgMax(const Counts& counts) {
  const std::string* best = nullptr;
  std::uint64_t best_count = 0;
  for (const auto& [tok, c] : counts) {
    if (best == nullptr || c > best_count || (c == best_count && tok < *best)) {
      best = &tok;
      best_count = c;
    }
  }
  return best ? *best : std::string();
}

}  // namespace

NgramPredictor TrainNgramPredictor(
    std::span<const std::vector<std::string>> corpus, int order) {
  if (order < 1 || order > 3) {
    throw Error(ErrorCode::kInvalidArgument, "n-gram order must be 1, 2 or 3");
  }
  NgramPredictor model;
  model.order_ = order;
  Counts unigram;
  std::unordered_map<std::string, Counts> by_pair;
  for (const auto& doc : corpus) {
    const MaskedSequence seq(0, doc, doc.size());  // nothing masked
    for (std::size_t i = 0; i < doc.size(); ++i) {
      const auto pos = static_cast<std::ptrdiff_t>(i);
      ++unigram[doc[i]];
      if (order >= 2) {
        ++model.by_left_[std::string(seq.at(pos - 1))][doc[i]];
        ++model.by_right_[std::string(seq.at(pos + 1))][doc[i]];
      }
      if (order >= 3) {
        ++by_pair[PairKey(seq.at(pos - 1), seq.at(pos + 1))][doc[i]];
      }
    }
  }
  if (unigram.empty()) {
    throw Error(ErrorCode::kInvalidArgument, "empty training corpus");
  }
  model.mode_ = ArgMax(unigram);
  for (const auto& [key, counts] : by_pair) {
    model.best_by_pair_.emplace(key, ArgMax(counts));
  }
  return model;
}

std::string NgramPredictor::Predict(const MaskedSequence& context) const {
  const auto pos = static_cast<std::ptrdiff_t>(context.masked_position());
  const std::string_view left = context.at(pos - 1);
  const std::string_view right = context.at(pos + 1);
  if (order_ >= 3) {
    auto it = best_by_pair_.find(PairKey(left, right));
    if (it != best_by_pair_.end()) return it->second;
  }
  if (order_ >= 2) {
    auto l = by_left_.find(std::string(left));
    auto r = by_right_.find(std::string(right));
    if (l != by_left_.end() && r != by_right_.end()) {
      Counts merged = l->second;
      for (const auto& [tok, c] : r->second) merged[tok] += c;
      return ArgMax(merged);
    }
    if (l != by_left_.end()) return ArgMax(l->second);
    if (r != by_right_.end()) return ArgMax(r->second);
  }
  return mode_;
}

ExternalPredictor ExternalPredictor::FromJsonLines(std::istream& in) {
  ExternalPredictor out;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    try {
      const auto rec = nlohmann::json::parse(line);
      out.predictions_[{rec.at("doc_id").get<std::uint64_t>(),
                        rec.at("position").get<std::uint64_t>()}] =
          rec.at("predicted_token").get<std::string>();
    } catch (const nlohmann::json::exception& e) {
      throw Error(ErrorCode::kParse, "predictions line " +
                                         std::to_string(line_no) + ": " +
                                         e.what());
    }
  }
  return out;
}

ExternalPredictor ExternalPredictor::FromFile(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kNotFound, "cannot open " + path);
  return FromJsonLines(in);
}

std::string ExternalPredictor::Predict(const MaskedSequence& context) const {
  auto it = predictions_.find({context.doc_id(), context.masked_position()});
  if (it == predictions_.end()) {
    throw Error(ErrorCode::kNotFound,
                "no prediction for document " +
                    std::to_string(context.doc_id()) + " position " +
                    std::to_string(context.masked_position()));
  }
  return it->second;
}

AttackReport RunAttack(std::span<const std::vector<std::string>> raw,
                       std::span<const std::vector<std::string>> sanitized,
                       const Predictor& predictor, int threads) {
  if (raw.size() != sanitized.size()) {
    throw Error(ErrorCode::kMisaligned,
                "raw corpus has " + std::to_string(raw.size()) +
                    " documents, sanitized has " +
                    std::to_string(sanitized.size()));
  }
  for (std::size_t d = 0; d < raw.size(); ++d) {
    if (raw[d].size() != sanitized[d].size()) {
      throw Error(ErrorCode::kMisaligned,
                  "document " + std::to_string(d) + " has " +
                      std::to_string(raw[d].size()) + " raw tokens but " +
                      std::to_string(sanitized[d].size()) + " sanitized");
    }
  }
  std::vector<AttackReport> partial(ChunkCount(raw.size(), threads));
  ParallelFor(raw.size(), threads,
              [&](std::size_t begin, std::size_t end, std::size_t chunk) {
                AttackReport& r = partial[chunk];
                for (std::size_t d = begin; d < end; ++d) {
                  for (std::size_t i = 0; i < raw[d].size(); ++i) {
                    const MaskedSequence ctx(d, sanitized[d], i);
                    if (predictor.Predict(ctx) == raw[d][i]) ++r.matched;
                    ++r.total_positions;
                  }
                }
              });
  AttackReport report;
  for (const auto& r : partial) {
    report.total_positions += r.total_positions;
    report.matched += r.matched;
  }
  report.defense_rate =
      report.total_positions == 0
          ? 1.0
          : 1.0 - static_cast<double>(report.matched) /
                      static_cast<double>(report.total_positions);
  return report;
}

}  // namespace santext
