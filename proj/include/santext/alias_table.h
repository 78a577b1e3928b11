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

#ifndef SANTEXT_ALIAS_TABLE_H_
#define SANTEXT_ALIAS_TABLE_H_

#include <cstdint>
#include <span>
#include <vector>

#include "santext/random.h"

namespace santext {

// Vose's alias method over caller-owned storage, so that a whole probability
// matrix can keep its tables in two flat arrays. `probs` need not be exactly
// normalized. Zero-probability slots are never returned.
void BuildAliasRow(std::span<const double> probs, std::span<double> thresholds,
                   std::span<std::uint32_t> aliases);

// Maps one uniform draw u in [0, 1) to a slot: the integer part of u * n picks
// the column and the fractional part flips the biased coin.
inline std::size_t SampleAliasRow(std::span<const double> thresholds,
                                  std::span<const std::uint32_t> aliases,
                                  double u) {
  const std::size_t n = thresholds.size();
  const double scaled = u * static_cast<double>(n);
  std::size_t column = static_cast<std::size_t>(scaled);
  if (column >= n) column = n - 1;
  const double coin = scaled - static_cast<double>(column);
  return coin < thresholds[column] ? column : aliases[column];
}

class AliasTable {
 public:
  explicit AliasTable(std::span<const double> probs);

  std::size_t size() const { return thresholds_.size(); }
  std::size_t Sample(RandomStream& rng) const {
    return SampleAliasRow(thresholds_, aliases_, rng.Uniform());
  }

 private:
  std::vector<double> thresholds_;
  std::vector<std::uint32_t> aliases_;
};

}  // namespace santext

#endif  // SANTEXT_ALIAS_TABLE_H_
