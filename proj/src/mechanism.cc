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

#include "santext/mechanism.h"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstring>
#include <istream>
#include <list>
#include <mutex>
#include <numeric>
#include <ostream>
#include <unordered_map>
#include <utility>

#include "santext/alias_table.h"
#include "santext/error.h"
#include "santext/parallel.h"

namespace santext {
namespace {

constexpr char kModelMagic[8] = {'S', 'T', 'P', 'M', 'O', 'D', 'E', 'L'};
constexpr std::uint64_t kModelVersion = 1;

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

void WriteF64(std::ostream& out, double d) {
  std::uint64_t bits;
  std::memcpy(&bits, &d, sizeof(bits));
  WriteU64(out, bits);
}

std::uint64_t ReadU64(std::istream& in) {
  std::uint64_t v = 0;
  if (!in.read(reinterpret_cast<char*>(&v), sizeof(v))) {
    throw Error(ErrorCode::kParse, "truncated probability model file");
  }
  return ToLittleEndian(v);
}

double ReadF64(std::istream& in) {
  const std::uint64_t bits = ReadU64(in);
  double d;
  std::memcpy(&d, &bits, sizeof(d));
  return d;
}

// Lazily computed row: slot probabilities and their running sum.
struct LazyRow {
  std::vector<double> cumulative;
};

// LRU map from input id to its computed row.
class RowCache {
 public:
  explicit RowCache(std::size_t capacity) : capacity_(std::max<std::size_t>(capacity, 1)) {}

  template <typename Compute>
  std::shared_ptr<const LazyRow> Get(TokenId x, Compute&& compute) {
    {
      std::lock_guard<std::mutex> lock(mu_);
      auto it = index_.find(x);
      if (it != index_.end()) {
        order_.splice(order_.begin(), order_, it->second);
        ++stats_.hits;
        return it->second->second;
      }
      ++stats_.misses;
    }
    // Computed outside the lock. Racing computations yield identical rows.
    auto row = std::make_shared<const LazyRow>(compute(x));
    std::lock_guard<std::mutex> lock(mu_);
    auto it = index_.find(x);
    if (it != index_.end()) return it->second->second;
    order_.emplace_front(x, row);
    index_[x] = order_.begin();
    if (order_.size() > capacity_) {
      index_.erase(order_.back().first);
      order_.pop_back();
    }
    return row;
  }

  RowCacheStats stats() const {
    std::lock_guard<std::mutex> lock(mu_);
    return stats_;
  }

 private:
  using Entry = std::pair<TokenId, std::shared_ptr<const LazyRow>>;
  std::size_t capacity_;
  mutable std::mutex mu_;
  std::list<Entry> order_;
  std::unordered_map<TokenId, std::list<Entry>::iterator> index_;
  RowCacheStats stats_;
};

}  // namespace

std::optional<MechanismKind> ParseMechanismKind(std::string_view name) {
  if (name == "santext") return MechanismKind::kSanText;
  if (name == "santext_plus" || name == "santext+") {
    return MechanismKind::kSanTextPlus;
  }
  if (name == "uniform_random" || name == "random") {
    return MechanismKind::kUniformRandom;
  }
  return std::nullopt;
}

std::string_view ToString(MechanismKind kind) {
  switch (kind) {
    case MechanismKind::kSanText:
      return "santext";
    case MechanismKind::kSanTextPlus:
      return "santext_plus";
    case MechanismKind::kUniformRandom:
      return "uniform_random";
  }
  return "unknown";
}

std::string_view ToString(ModelLayout layout) {
  return layout == ModelLayout::kFullMatrix ? "full_matrix" : "lazy_row";
}

std::optional<double> MechanismConfig::epsilon0() const {
  if (!(p > 0.0)) return std::nullopt;
  return std::log(1.0 / p);
}

void MechanismConfig::Validate() const {
  if (!(std::isfinite(epsilon) && epsilon >= 0.0)) {
    throw Error(ErrorCode::kInvalidArgument,
                "epsilon must be finite and non-negative");
  }
  if (!(p >= 0.0 && p <= 1.0)) {
    throw Error(ErrorCode::kInvalidArgument, "p must lie in [0, 1]");
  }
}

Eigen::VectorXd ComputeRow(TokenId x, std::span<const TokenId> targets,
                           double epsilon, const EmbeddingMatrix& embeddings) {
  if (targets.empty()) {
    throw Error(ErrorCode::kInvalidArgument, "empty target set");
  }
  return StableSoftmax(-0.5 * epsilon * embeddings.DistancesFrom(x, targets));
}

struct ProbabilityModel::Impl {
  MechanismConfig config;
  ModelLayout layout = ModelLayout::kFullMatrix;
  std::shared_ptr<const EmbeddingMatrix> embeddings;
  std::size_t n = 0;
  std::vector<TokenId> targets;
  std::vector<bool> sensitive;
  // One extra slot per row for the passthrough outcome.
  bool self_slot = false;
  std::size_t slots = 0;
  std::uint64_t embedding_hash = 0;
  std::uint64_t partition_hash = 0;

  // Full matrix.
  Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor> probs;
  std::vector<double> thresholds;
  std::vector<std::uint32_t> aliases;

  // Lazy rows.
  std::unique_ptr<RowCache> cache;

  double Passthrough(TokenId x) const {
    if (config.kind != MechanismKind::kSanTextPlus || sensitive[x]) return 0.0;
    return 1.0 - config.p;
  }

  // Distance-weighted part of row x, already scaled by p where it applies.
  void FillTargetRow(TokenId x, double* out) const {
    const auto t = static_cast<Eigen::Index>(targets.size());
    Eigen::Map<Eigen::VectorXd> row(out, t);
    switch (config.kind) {
      case MechanismKind::kUniformRandom:
        row.setConstant(1.0 / static_cast<double>(n));
        return;
      case MechanismKind::kSanText:
        row = ComputeRow(x, targets, config.epsilon, *embeddings);
        return;
      case MechanismKind::kSanTextPlus:
        row = ComputeRow(x, targets, config.epsilon, *embeddings);
        if (!sensitive[x]) row *= config.p;
        return;
    }
  }

  void BuildAlias(TokenId x) {
    std::vector<double> slot_probs(slots);
    const double* row = probs.data() + static_cast<std::size_t>(x) * targets.size();
    std::copy(row, row + targets.size(), slot_probs.begin());
    if (self_slot) slot_probs.back() = Passthrough(x);
    const std::size_t offset = static_cast<std::size_t>(x) * slots;
    BuildAliasRow(slot_probs,
                  std::span<double>(thresholds.data() + offset, slots),
                  std::span<std::uint32_t>(aliases.data() + offset, slots));
  }

  void Materialize(int threads) {
    probs.resize(static_cast<Eigen::Index>(n),
                 static_cast<Eigen::Index>(targets.size()));
    thresholds.assign(n * slots, 0.0);
    aliases.assign(n * slots, 0);
    ParallelFor(n, threads, [&](std::size_t begin, std::size_t end, std::size_t) {
      for (std::size_t x = begin; x < end; ++x) {
        FillTargetRow(static_cast<TokenId>(x),
                      probs.data() + x * targets.size());
        BuildAlias(static_cast<TokenId>(x));
      }
    });
  }

  LazyRow ComputeLazy(TokenId x) const {
    LazyRow row;
    row.cumulative.resize(slots);
    FillTargetRow(x, row.cumulative.data());
    if (self_slot) row.cumulative.back() = Passthrough(x);
    std::partial_sum(row.cumulative.begin(), row.cumulative.end(),
                     row.cumulative.begin());
    return row;
  }

  Eigen::VectorXd TargetRow(TokenId x) const {
    Eigen::VectorXd row(static_cast<Eigen::Index>(targets.size()));
    if (layout == ModelLayout::kFullMatrix) {
      row = probs.row(x).transpose();
    } else {
      FillTargetRow(x, row.data());
    }
    return row;
  }
};

ProbabilityModel::ProbabilityModel(std::unique_ptr<Impl> impl)
    : impl_(std::move(impl)) {}
ProbabilityModel::ProbabilityModel(ProbabilityModel&&) noexcept = default;
ProbabilityModel& ProbabilityModel::operator=(ProbabilityModel&&) noexcept =
    default;
ProbabilityModel::~ProbabilityModel() = default;

std::unique_ptr<ProbabilityModel::Impl> ProbabilityModel::NewImpl(
    std::shared_ptr<const EmbeddingMatrix> embeddings,
    const SensitivityPartition* partition, const MechanismConfig& config,
    const ModelOptions& options, std::optional<ModelLayout> forced) {
  config.Validate();
  if (!embeddings || embeddings->size() == 0) {
    throw Error(ErrorCode::kConfiguration, "no embeddings");
  }
  auto impl = std::make_unique<ProbabilityModel::Impl>();
  impl->config = config;
  impl->embeddings = std::move(embeddings);
  impl->n = static_cast<std::size_t>(impl->embeddings->size());
  impl->embedding_hash = impl->embeddings->ContentHash();
  impl->sensitive.assign(impl->n, true);

  if (config.kind == MechanismKind::kSanTextPlus) {
    if (partition == nullptr) {
      throw Error(ErrorCode::kConfiguration,
                  "santext_plus requires a sensitivity partition");
    }
    if (partition->size() != impl->n) {
      throw Error(ErrorCode::kConfiguration,
                  "partition size does not match the embeddings");
    }
    if (partition->sensitive_ids().empty()) {
      throw Error(ErrorCode::kConfiguration,
                  "santext_plus requires a non-empty sensitive set");
    }
    impl->targets.assign(partition->sensitive_ids().begin(),
                         partition->sensitive_ids().end());
    for (TokenId x : partition->nonsensitive_ids()) impl->sensitive[x] = false;
    impl->self_slot = !partition->nonsensitive_ids().empty();
    impl->partition_hash = partition->ContentHash();
  } else {
    impl->targets.resize(impl->n);
    std::iota(impl->targets.begin(), impl->targets.end(), TokenId{0});
  }
  impl->slots = impl->targets.size() + (impl->self_slot ? 1 : 0);

  if (forced) {
    impl->layout = *forced;
  } else {
    const std::uint64_t need = static_cast<std::uint64_t>(impl->n) *
                               impl->slots * kFullMatrixBytesPerEntry;
    impl->layout = need <= options.memory_budget_bytes
                       ? ModelLayout::kFullMatrix
                       : ModelLayout::kLazyRow;
  }
  if (impl->layout == ModelLayout::kLazyRow) {
    const std::uint64_t row_bytes = impl->slots * sizeof(double);
    impl->cache = std::make_unique<RowCache>(
        static_cast<std::size_t>(options.memory_budget_bytes / row_bytes));
  }
  return impl;
}

ProbabilityModel ProbabilityModel::Build(
    std::shared_ptr<const EmbeddingMatrix> embeddings,
    const SensitivityPartition* partition, const MechanismConfig& config,
    const ModelOptions& options) {
  auto impl = NewImpl(std::move(embeddings), partition, config, options,
                      options.layout);
  if (impl->layout == ModelLayout::kFullMatrix) impl->Materialize(options.threads);
  return ProbabilityModel(std::move(impl));
}

const MechanismConfig& ProbabilityModel::config() const {
  return impl_->config;
}
ModelLayout ProbabilityModel::layout() const { return impl_->layout; }
std::size_t ProbabilityModel::vocab_size() const { return impl_->n; }
std::span<const TokenId> ProbabilityModel::targets() const {
  return impl_->targets;
}
bool ProbabilityModel::is_sensitive(TokenId x) const {
  return impl_->sensitive.at(x);
}
double ProbabilityModel::passthrough_mass(TokenId x) const {
  return impl_->Passthrough(x);
}
std::uint64_t ProbabilityModel::embedding_hash() const {
  return impl_->embedding_hash;
}
std::uint64_t ProbabilityModel::partition_hash() const {
  return impl_->partition_hash;
}
RowCacheStats ProbabilityModel::cache_stats() const {
  return impl_->cache ? impl_->cache->stats() : RowCacheStats{};
}

Eigen::VectorXd ProbabilityModel::TargetRow(TokenId x) const {
  return impl_->TargetRow(x);
}

Eigen::VectorXd ProbabilityModel::DenseRow(TokenId x) const {
  Eigen::VectorXd dense = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(impl_->n));
  const Eigen::VectorXd part = impl_->TargetRow(x);
  for (std::size_t k = 0; k < impl_->targets.size(); ++k) {
    dense[impl_->targets[k]] = part[static_cast<Eigen::Index>(k)];
  }
  dense[x] += impl_->Passthrough(x);
  return dense;
}

Eigen::MatrixXd ProbabilityModel::DenseMatrix() const {
  const auto n = static_cast<Eigen::Index>(impl_->n);
  Eigen::MatrixXd m(n, n);
  for (Eigen::Index x = 0; x < n; ++x) {
    m.row(x) = DenseRow(static_cast<TokenId>(x)).transpose();
  }
  return m;
}

double ProbabilityModel::Probability(TokenId x, TokenId y) const {
  double mass = x == y ? impl_->Passthrough(x) : 0.0;
  auto it = std::lower_bound(impl_->targets.begin(), impl_->targets.end(), y);
  if (it != impl_->targets.end() && *it == y) {
    const auto k = static_cast<Eigen::Index>(it - impl_->targets.begin());
    if (impl_->layout == ModelLayout::kFullMatrix) {
      mass += impl_->probs(x, k);
    } else {
      mass += impl_->TargetRow(x)[k];
    }
  }
  return mass;
}

TokenId ProbabilityModel::Sample(TokenId x, RandomStream& rng) const {
  const Impl& m = *impl_;
  const double u = rng.Uniform();
  std::size_t slot;
  if (m.layout == ModelLayout::kFullMatrix) {
    const std::size_t offset = static_cast<std::size_t>(x) * m.slots;
    slot = SampleAliasRow(
        std::span<const double>(m.thresholds.data() + offset, m.slots),
        std::span<const std::uint32_t>(m.aliases.data() + offset, m.slots), u);
  } else {
    auto row = m.cache->Get(x, [&](TokenId id) { return m.ComputeLazy(id); });
    const auto& cum = row->cumulative;
    const double target = u * cum.back();
    slot = static_cast<std::size_t>(
        std::upper_bound(cum.begin(), cum.end(), target) - cum.begin());
    if (slot >= cum.size()) slot = cum.size() - 1;
  }
  return slot == m.targets.size() ? x : m.targets[slot];
}

void ProbabilityModel::Save(std::ostream& out, std::uint64_t vocab_hash) const {
  const Impl& m = *impl_;
  if (m.layout != ModelLayout::kFullMatrix) {
    throw Error(ErrorCode::kConfiguration,
                "only full-matrix models can be written to a cache file");
  }
  out.write(kModelMagic, sizeof(kModelMagic));
  WriteU64(out, kModelVersion);
  WriteU64(out, static_cast<std::uint64_t>(m.config.kind));
  WriteF64(out, m.config.epsilon);
  WriteF64(out, m.config.p);
  WriteU64(out, vocab_hash);
  WriteU64(out, m.partition_hash);
  WriteU64(out, m.embedding_hash);
  WriteU64(out, m.n);
  WriteU64(out, m.targets.size());
  for (Eigen::Index i = 0; i < m.probs.size(); ++i) WriteF64(out, m.probs.data()[i]);
  if (!out) throw Error(ErrorCode::kIo, "failed writing probability model");
}

ProbabilityModel ProbabilityModel::Load(
    std::istream& in, std::uint64_t vocab_hash,
    std::shared_ptr<const EmbeddingMatrix> embeddings,
    const SensitivityPartition* partition, const ModelOptions& options) {
  char magic[sizeof(kModelMagic)];
  if (!in.read(magic, sizeof(magic)) ||
      std::memcmp(magic, kModelMagic, sizeof(magic)) != 0) {
    throw Error(ErrorCode::kParse, "not a probability model file");
  }
  if (ReadU64(in) != kModelVersion) {
    throw Error(ErrorCode::kParse, "unsupported probability model version");
  }
  const std::uint64_t kind = ReadU64(in);
  if (kind > static_cast<std::uint64_t>(MechanismKind::kUniformRandom)) {
    throw Error(ErrorCode::kParse, "unknown mechanism kind in model file");
  }
  MechanismConfig config;
  config.kind = static_cast<MechanismKind>(kind);
  config.epsilon = ReadF64(in);
  config.p = ReadF64(in);
  const std::uint64_t stored_vocab = ReadU64(in);
  const std::uint64_t stored_partition = ReadU64(in);
  const std::uint64_t stored_embedding = ReadU64(in);
  const std::uint64_t rows = ReadU64(in);
  const std::uint64_t cols = ReadU64(in);

  auto impl = NewImpl(std::move(embeddings), partition, config, options,
                      ModelLayout::kFullMatrix);
  if (stored_vocab != vocab_hash) {
    throw Error(ErrorCode::kConfiguration,
                "model file was built for a different vocabulary");
  }
  if (stored_embedding != impl->embedding_hash) {
    throw Error(ErrorCode::kConfiguration,
                "model file was built from different embeddings");
  }
  if (stored_partition != impl->partition_hash) {
    throw Error(ErrorCode::kConfiguration,
                "model file was built with a different sensitivity partition");
  }
  if (rows != impl->n || cols != impl->targets.size()) {
    throw Error(ErrorCode::kConfiguration, "model file has the wrong shape");
  }
  impl->probs.resize(static_cast<Eigen::Index>(rows),
                     static_cast<Eigen::Index>(cols));
  for (Eigen::Index i = 0; i < impl->probs.size(); ++i) {
    impl->probs.data()[i] = ReadF64(in);
  }
  impl->thresholds.assign(impl->n * impl->slots, 0.0);
  impl->aliases.assign(impl->n * impl->slots, 0);
  Impl* raw = impl.get();
  ParallelFor(impl->n, options.threads,
              [raw](std::size_t begin, std::size_t end, std::size_t) {
                for (std::size_t x = begin; x < end; ++x) {
                  raw->BuildAlias(static_cast<TokenId>(x));
                }
              });
  return ProbabilityModel(std::move(impl));
}

SanitizedDocument SanitizeDocument(const Document& document,
                                   const ProbabilityModel& model,
                                   std::uint64_t master_seed) {
  SanitizedDocument out;
  out.stream_id = document.id;
  out.tokens.reserve(document.tokens.size());
  RandomStream rng = MakeStream(master_seed, StreamDomain::kDocument, document.id);
  for (TokenId x : document.tokens) out.tokens.push_back(model.Sample(x, rng));
  return out;
}

}  // namespace santext
