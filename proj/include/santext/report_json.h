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

#ifndef SANTEXT_REPORT_JSON_H_
#define SANTEXT_REPORT_JSON_H_

#include <string>

#include <json.hpp>

#include "santext/attack.h"
#include "santext/dp_verify.h"
#include "santext/privacy_stats.h"
#include "santext/sanitizer.h"
#include "santext/vocab.h"

namespace santext {

// Non-finite doubles become the strings "inf", "-inf" or "nan"; JSON has no
// literal for them.
nlohmann::json JsonNumber(double value);

nlohmann::json ToJson(const Quantiles& q);
// Per-token records plus aggregate quantiles.
nlohmann::json ToJson(const PrivacyReport& report, const Vocabulary& vocab);
nlohmann::json ToJson(const DPVerificationResult& result,
                      const Vocabulary& vocab);
nlohmann::json ToJson(const AttackReport& report);
nlohmann::json ToJson(const SanitizeStats& stats);

void WriteJson(const std::string& path, const nlohmann::json& value);

}  // namespace santext

#endif  // SANTEXT_REPORT_JSON_H_
