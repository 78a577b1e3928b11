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

#include "santext/alias_table.h"

#include <algorithm>
#include <deque>
#include <numeric>

#include "santext/error.h"

namespace santext {

void BuildAliasRow(std::span<const double> probs, std::span<double> thresholds,
                   std::span<std::uint32_t> aliases) {
  const std::size_t n = probs.size();
  if (n == 0 || thresholds.size() != n || aliases.size() != n) {
    throw Error(ErrorCode::kInvalidArgument, "alias row size mismatch");
  }
  const double total = std::accumulate(probs.begin(), probs.end(), 0.0);
  if (!(total > 0.0)) {
    throw Error(ErrorCode::kInvalidArgument, "alias row has no mass");
  }
  const double scale = static_cast<double>(n) / total;

  // Zero-mass slots are paired with donors first.
  std::deque<std::uint32_t> small;
  std::vector<std::uint32_t> large;
  for (std::size_t i = 0; i < n; ++i) {
    thresholds[i] = probs[i] * scale;
    aliases[i] = static_cast<std::uint32_t>(i);
    if (probs[i] <= 0.0) {
      thresholds[i] = 0.0;
      small.push_front(static_cast<std::uint32_t>(i));
    } else if (thresholds[i] < 1.0) {
      small.push_back(static_cast<std::uint32_t>(i));
    } else {
      large.push_back(static_cast<std::uint32_t>(i));
    }
  }
  while (!small.empty() && !large.empty()) {
    const std::uint32_t s = small.front();
    small.pop_front();
    const std::uint32_t l = large.back();
    aliases[s] = l;
    thresholds[l] -= 1.0 - thresholds[s];
    if (thresholds[l] < 1.0) {
      large.pop_back();
      small.push_back(l);
    }
  }
  // Leftovers are within rounding of exactly 1.
  for (std::uint32_t l : large) thresholds[l] = 1.0;
  const auto heaviest = static_cast<std::uint32_t>(
      std::max_element(probs.begin(), probs.end()) - probs.begin());
  for (std::uint32_t s : small) {
    if (probs[s] > 0.0) {
      thresholds[s] = 1.0;
    } else {
      aliases[s] = heaviest;
    }
  }
}

AliasTable::AliasTable(std::span<const double> probs)
    : thresholds_(probs.size()), aliases_(probs.size()) {
  BuildAliasRow(probs, thresholds_, aliases_);
}

}  // namespace santext
