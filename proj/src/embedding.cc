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

#include <bit>
#include <cmath>
#include <cstring>
#include <fstream>
#include <istream>
#include <ostream>
#include <string_view>
#include <unordered_map>

#include "santext/error.h"
#include "santext/hashing.h"

namespace santext {
namespace {

constexpr char kCacheMagic[8] = {'S', 'T', 'E', 'M', 'B', 'E', 'D', '\0'};
constexpr std::uint64_t kCacheVersion = 1;

std::uint64_t ToLittleEndian(std::uint64_t v) {
  if constexpr (std::endian::native == std::endian::little) {
    return v;
  } else {
    return __builtin_bswap64(v);
  }
}

void WriteU64(std::ostream& out, std::uint64_t v) {
  v = ToLittleEndian(v);
  out.write(reinterpret_cast<const char*>(&v), sizeof(v));
}

std::uint64_t ReadU64(std::istream& in) {
  std::uint64_t v = 0;
  if (!in.read(reinterpret_cast<char*>(&v), sizeof(v))) {
    throw Error(ErrorCode::kParse, "truncated embedding cache");
  }
  return ToLittleEndian(v);
}

// Splits on spaces and tabs without allocating.
template <typename Fn>
std::size_t ForEachField(std::string_view line, Fn&& fn) {
  std::size_t count = 0;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t')) ++i;
    if (i >= line.size()) break;
    std::size_t j = i;
    while (j < line.size() && line[j] != ' ' && line[j] != '\t') ++j;
    fn(count, line.substr(i, j - i));
    ++count;
    i = j;
  }
  return count;
}

double ParseDouble(std::string_view field, std::size_t line_no) {
  std::string buf(field);
  char* end = nullptr;
  const double v = std::strtod(buf.c_str(), &end);
  if (end != buf.c_str() + buf.size() || !std::isfinite(v)) {
    throw Error(ErrorCode::kParse, "line " + std::to_string(line_no) +
                                       ": bad embedding value '" + buf + "'");
  }
  return v;
}

}  // namespace

template <>
std::uint64_t Embeddings<double>::ContentHash() const {
  Fnv1a h;
  h.UpdateU64(static_cast<std::uint64_t>(vectors_.rows()));
  h.UpdateU64(static_cast<std::uint64_t>(vectors_.cols()));
  for (Eigen::Index i = 0; i < vectors_.size(); ++i) {
    h.UpdateDouble(vectors_.data()[i]);
  }
  return h.digest();
}

std::unordered_set<std::string> ScanGloveTokens(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kNotFound, "cannot open " + path);
  std::unordered_set<std::string> tokens;
  std::string line;
  while (std::getline(in, line)) {
    const std::size_t start = line.find_first_not_of(" \t");
    if (start == std::string::npos) continue;
    const std::size_t end = line.find_first_of(" \t", start);
    tokens.emplace(line.substr(start, end - start));
  }
  return tokens;
}

GloveLoadResult LoadGloveText(std::istream& in, const Vocabulary& vocab) {
  GloveLoadResult result;
  std::vector<bool> found(vocab.size(), false);
  std::vector<std::vector<double>> rows(vocab.size());
  Eigen::Index dim = -1;
  std::string line;
  std::size_t line_no = 0;
  std::vector<double> values;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    std::string_view token;
    values.clear();
    const std::size_t fields =
        ForEachField(line, [&](std::size_t k, std::string_view f) {
          if (k == 0) {
            token = f;
          } else {
            values.push_back(ParseDouble(f, line_no));
          }
        });
    if (fields == 0) continue;
    const auto m = static_cast<Eigen::Index>(fields - 1);
    if (m == 0) {
      throw Error(ErrorCode::kParse,
                  "line " + std::to_string(line_no) + ": token has no vector");
    }
    if (dim < 0) {
      dim = m;
    } else if (m != dim) {
      throw Error(ErrorCode::kParse,
                  "line " + std::to_string(line_no) + ": expected " +
                      std::to_string(dim) + " components, found " +
                      std::to_string(m));
    }
    ++result.lines_read;
    auto id = vocab.Find(std::string(token));
    if (!id || found[*id]) continue;
    found[*id] = true;
    rows[*id] = values;
  }
  if (dim < 0) dim = 0;

  EmbeddingMatrix::Matrix matrix =
      EmbeddingMatrix::Matrix::Zero(static_cast<Eigen::Index>(vocab.size()), dim);
  std::unordered_map<std::string, TokenId> seen_vectors;
  for (std::size_t i = 0; i < vocab.size(); ++i) {
    if (!found[i]) {
      result.missing.push_back(vocab.token(static_cast<TokenId>(i)));
      continue;
    }
    for (Eigen::Index k = 0; k < dim; ++k) {
      matrix(static_cast<Eigen::Index>(i), k) = rows[i][k];
    }
    std::string key(reinterpret_cast<const char*>(rows[i].data()),
                    rows[i].size() * sizeof(double));
    if (!seen_vectors.emplace(std::move(key), static_cast<TokenId>(i)).second) {
      ++result.duplicate_vectors;
    }
  }
  result.embeddings = EmbeddingMatrix(std::move(matrix));
  return result;
}

GloveLoadResult LoadGloveText(const std::string& path,
                              const Vocabulary& vocab) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kNotFound, "cannot open " + path);
  return LoadGloveText(in, vocab);
}

void WriteEmbeddingCache(std::ostream& out, const EmbeddingMatrix& embeddings,
                         const Vocabulary& vocab) {
  out.write(kCacheMagic, sizeof(kCacheMagic));
  WriteU64(out, kCacheVersion);
  WriteU64(out, static_cast<std::uint64_t>(embeddings.size()));
  WriteU64(out, static_cast<std::uint64_t>(embeddings.dim()));
  WriteU64(out, vocab.ContentHash());
  const auto& m = embeddings.matrix();
  for (Eigen::Index i = 0; i < m.size(); ++i) {
    std::uint64_t bits;
    std::memcpy(&bits, m.data() + i, sizeof(bits));
    WriteU64(out, bits);
  }
  if (!out) throw Error(ErrorCode::kIo, "failed writing embedding cache");
}

EmbeddingMatrix ReadEmbeddingCache(std::istream& in, const Vocabulary& vocab) {
  char magic[sizeof(kCacheMagic)];
  if (!in.read(magic, sizeof(magic)) ||
      std::memcmp(magic, kCacheMagic, sizeof(magic)) != 0) {
    throw Error(ErrorCode::kParse, "not an embedding cache");
  }
  if (ReadU64(in) != kCacheVersion) {
    throw Error(ErrorCode::kParse, "unsupported embedding cache version");
  }
  const std::uint64_t rows = ReadU64(in);
  const std::uint64_t cols = ReadU64(in);
  const std::uint64_t vocab_hash = ReadU64(in);
  if (rows != vocab.size() || vocab_hash != vocab.ContentHash()) {
    throw Error(ErrorCode::kConfiguration,
                "embedding cache is stale for this vocabulary");
  }
  EmbeddingMatrix::Matrix m(static_cast<Eigen::Index>(rows),
                            static_cast<Eigen::Index>(cols));
  for (Eigen::Index i = 0; i < m.size(); ++i) {
    const std::uint64_t bits = ReadU64(in);
    std::memcpy(m.data() + i, &bits, sizeof(bits));
  }
  return EmbeddingMatrix(std::move(m));
}

}  // namespace santext
