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

#include "santext/report_json.h"

#include <cmath>
#include <fstream>

#include "santext/error.h"

namespace santext {
namespace {

nlohmann::json WitnessJson(const Witness& w, const Vocabulary& vocab) {
  const auto name = [&](TokenId id) -> nlohmann::json {
    if (id < vocab.size()) return vocab.token(id);
    return nullptr;
  };
  return {{"x", name(w.x)},
          {"x_prime", name(w.x_prime)},
          {"y", name(w.y)},
          {"x_id", w.x},
          {"x_prime_id", w.x_prime},
          {"y_id", w.y}};
}

}  // namespace

nlohmann::json JsonNumber(double value) {
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  return value;
}

nlohmann::json ToJson(const Quantiles& q) {
  return {{"min", q.min},
          {"q1", q.q1},
          {"median", q.median},
          {"q3", q.q3},
          {"max", q.max}};
}

nlohmann::json ToJson(const PrivacyReport& report, const Vocabulary& vocab) {
  nlohmann::json tokens = nlohmann::json::array();
  for (std::size_t i = 0; i < report.self_rate.size(); ++i) {
    nlohmann::json rec = {
        {"token", i < vocab.size() ? vocab.token(static_cast<TokenId>(i))
                                   : std::to_string(i)},
        {"N_x", report.self_rate[i]},
        {"S_x", report.output_support[i]},
        {"S_star_y", report.input_support[i]},
        {"H0", report.hartley_entropy[i]},
        {"Hinf", report.min_entropy[i] ? nlohmann::json(*report.min_entropy[i])
                                       : nlohmann::json(nullptr)},
    };
    tokens.push_back(std::move(rec));
  }
  return {{"runs", report.runs},
          {"tokens", std::move(tokens)},
          {"aggregates",
           {{"N_x", ToJson(report.self_rate_quantiles)},
            {"S_x", ToJson(report.output_support_quantiles)},
            {"S_star_y", ToJson(report.input_support_quantiles)},
            {"H0", ToJson(report.hartley_quantiles)},
            {"Hinf", ToJson(report.min_entropy_quantiles)}}}};
}

nlohmann::json ToJson(const DPVerificationResult& result,
                      const Vocabulary& vocab) {
  nlohmann::json j = {
      {"bound_kind", std::string(ToString(result.bound))},
      {"epsilon", result.epsilon},
      {"epsilon0", JsonNumber(result.epsilon0)},
      {"max_log_ratio_excess", JsonNumber(result.max_log_ratio_excess)},
      {"witness", result.witness ? WitnessJson(*result.witness, vocab)
                                 : nlohmann::json(nullptr)},
      {"exhaustive", result.exhaustive},
      {"pairs_checked", result.pairs_checked},
      {"triples_checked", result.triples_checked},
      {"slack", kVerificationSlack},
      {"notes", result.notes},
      {"passed", result.passed},
  };
  if (result.unprotected_outputs_invertible) {
    j["unprotected_outputs_invertible"] = *result.unprotected_outputs_invertible;
    j["unprotected_witness"] =
        result.unprotected_witness
            ? WitnessJson(*result.unprotected_witness, vocab)
            : nlohmann::json(nullptr);
  }
  return j;
}

nlohmann::json ToJson(const AttackReport& report) {
  return {{"total_positions", report.total_positions},
          {"matched", report.matched},
          {"unmatched", report.total_positions - report.matched},
          {"defense_rate", report.defense_rate}};
}

nlohmann::json ToJson(const SanitizeStats& stats) {
  return {{"documents", stats.documents},
          {"tokens", stats.tokens},
          {"oov_tokens", stats.oov_tokens},
          {"self_substitutions", stats.self_substitutions},
          {"seconds", stats.seconds}};
}

void WriteJson(const std::string& path, const nlohmann::json& value) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorCode::kIo, "cannot write " + path);
  out << value.dump(2) << '\n';
  if (!out) throw Error(ErrorCode::kIo, "failed writing " + path);
}

}  // namespace santext
