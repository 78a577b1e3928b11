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


#ifndef SANTEXT_TESTS_TESTING_FIXTURES_H_
#define SANTEXT_TESTS_TESTING_FIXTURES_H_

#include <memory>
#include <string>
#include <vector>

#include "santext/embedding.h"
#include "santext/vocab.h"
#include "testing/oracles.h"

namespace santext::testing {

inline std::shared_ptr<const EmbeddingMatrix> ToEmbeddings(const Points& pts) {
  EmbeddingMatrix::Matrix m(static_cast<Eigen::Index>(pts.size()),
                            static_cast<Eigen::Index>(pts.empty() ? 0 : pts[0].size()));
  for (std::size_t i = 0; i < pts.size(); ++i) {
    for (std::size_t j = 0; j < pts[i].size(); ++j) {
      m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = pts[i][j];
    }
  }
  return std::make_shared<const EmbeddingMatrix>(std::move(m));
}

inline Vocabulary NumberedVocab(std::size_t n) {
  std::vector<std::string> tokens;
  for (std::size_t i = 0; i < n; ++i) tokens.push_back("w" + std::to_string(i));
  return Vocabulary(std::move(tokens));
}

inline SensitivityPartition RandomPartition(Gen& gen, std::size_t n, double w) {
  std::vector<bool> flags(n, false);
  std::size_t sensitive = 0;
  for (std::size_t i = 0; i < n; ++i) {
    flags[i] = gen.Bool(w);
    sensitive += flags[i];
  }
  if (sensitive == 0) flags[static_cast<std::size_t>(gen.Int(0, static_cast<int>(n) - 1))] = true;
  return SensitivityPartition(std::move(flags), w);
}

}  // namespace santext::testing

#endif  // SANTEXT_TESTS_TESTING_FIXTURES_H_
