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

#include "santext/dp_verify.h"

#include <cmath>
#include <functional>

#include "santext/error.h"
#include "santext/parallel.h"
#include "santext/random.h"

namespace santext {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

using RowSource = std::function<Eigen::VectorXd(TokenId)>;

struct BoundSpec {
  BoundKind kind = BoundKind::kMldp;
  double epsilon = 0.0;
  // +inf when p == 0.
  double epsilon0 = 0.0;
  double p = 1.0;
  const EmbeddingMatrix* embeddings = nullptr;
  const SensitivityPartition* partition = nullptr;

  // Allowed log ratio for the pair, or empty if the pair carries no bound.
  std::optional<double> For(TokenId x, TokenId x_prime) const {
    switch (kind) {
      case BoundKind::kLdp:
        return epsilon;
      case BoundKind::kMldp:
        return epsilon * embeddings->Distance(x, x_prime);
      case BoundKind::kUmldp: {
        double b = epsilon * embeddings->Distance(x, x_prime);
        if (partition->is_sensitive(x) != partition->is_sensitive(x_prime)) {
          if (std::isinf(epsilon0)) return std::nullopt;
          b += epsilon0;
        }
        return b;
      }
    }
    return std::nullopt;
  }

  bool ChecksOutput(TokenId y) const {
    return kind != BoundKind::kUmldp || partition->is_sensitive(y);
  }
};

struct Scan {
  double max_excess = -kInf;
  std::optional<Witness> witness;
  std::uint64_t pairs = 0;
  std::uint64_t triples = 0;
  std::optional<Witness> unprotected;

  // Keeps the earliest witness among equal maxima.
  void Merge(const Scan& other) {
    if (other.max_excess > max_excess) {
      max_excess = other.max_excess;
      witness = other.witness;
    }
    pairs += other.pairs;
    triples += other.triples;
    if (!unprotected && other.unprotected) unprotected = other.unprotected;
  }
};

void ScanPair(const Eigen::Ref<const Eigen::VectorXd>& log_x,
              const Eigen::Ref<const Eigen::VectorXd>& log_x_prime,
              TokenId x, TokenId x_prime, const BoundSpec& spec, Scan& scan) {
  const std::optional<double> bound = spec.For(x, x_prime);
  if (!bound) return;
  ++scan.pairs;
  for (Eigen::Index y = 0; y < log_x.size(); ++y) {
    const auto out = static_cast<TokenId>(y);
    if (!spec.ChecksOutput(out)) continue;
    const double lx = log_x[y];
    if (lx == -kInf) continue;
    ++scan.triples;
    const double lxp = log_x_prime[y];
    const double excess = lxp == -kInf ? kInf : lx - lxp - *bound;
    if (excess > scan.max_excess) {
      scan.max_excess = excess;
      scan.witness = Witness{x, x_prime, out};
    }
  }
}

// Row x must put no mass on an unprotected y != x, and (for p < 1) positive
// mass on x itself when x is unprotected.
void ScanUnprotected(const Eigen::Ref<const Eigen::VectorXd>& row, TokenId x,
                     const BoundSpec& spec, Scan& scan) {
  if (scan.unprotected) return;
  for (TokenId y : spec.partition->nonsensitive_ids()) {
    const double mass = row[y];
    if ((y != x && mass > 0.0) || (y == x && spec.p < 1.0 && !(mass > 0.0))) {
      scan.unprotected = Witness{x, x, y};
      return;
    }
  }
}

Eigen::VectorXd LogOf(const Eigen::VectorXd& row) {
  return row.array().log().matrix();
}

DPVerificationResult Finish(const BoundSpec& spec, const Scan& scan,
                            bool exhaustive, const VerifyOptions& options) {
  DPVerificationResult r;
  r.bound = spec.kind;
  r.epsilon = spec.epsilon;
  if (spec.kind == BoundKind::kUmldp && std::isfinite(spec.epsilon0)) {
    r.epsilon0 = spec.epsilon0;
  }
  r.max_log_ratio_excess = scan.max_excess;
  r.witness = scan.witness;
  r.exhaustive = exhaustive;
  r.pairs_checked = scan.pairs;
  r.triples_checked = scan.triples;
  bool ok = scan.max_excess <= options.slack;
  if (spec.kind == BoundKind::kUmldp) {
    r.unprotected_outputs_invertible = !scan.unprotected.has_value();
    r.unprotected_witness = scan.unprotected;
    ok = ok && !scan.unprotected;
    if (std::isinf(spec.epsilon0)) {
      r.notes.push_back(
          "p = 0: no bound exists for cross-partition pairs; they were not "
          "checked");
    }
  }
  if (!exhaustive) {
    r.notes.push_back("sampled verification over " +
                      std::to_string(scan.pairs) + " random input pairs");
  }
  r.passed = ok;
  return r;
}

DPVerificationResult VerifyExhaustive(
    const Eigen::Ref<const Eigen::MatrixXd>& transition, const BoundSpec& spec,
    const VerifyOptions& options) {
  const std::size_t n = static_cast<std::size_t>(transition.rows());
  const Eigen::MatrixXd logs = transition.array().log().matrix();
  std::vector<Scan> partial(ChunkCount(n, options.threads));
  ParallelFor(n, options.threads,
              [&](std::size_t begin, std::size_t end, std::size_t chunk) {
                Scan& scan = partial[chunk];
                for (std::size_t x = begin; x < end; ++x) {
                  const auto id = static_cast<TokenId>(x);
                  for (std::size_t xp = 0; xp < n; ++xp) {
                    if (xp == x) continue;
                    ScanPair(logs.row(x).transpose(), logs.row(xp).transpose(),
                             id, static_cast<TokenId>(xp), spec, scan);
                  }
                  if (spec.kind == BoundKind::kUmldp) {
                    ScanUnprotected(transition.row(x).transpose(), id, spec,
                                    scan);
                  }
                }
              });
  Scan total;
  for (const auto& s : partial) total.Merge(s);
  return Finish(spec, total, true, options);
}

DPVerificationResult VerifySampled(std::size_t n, const RowSource& rows,
                                   const BoundSpec& spec,
                                   const VerifyOptions& options) {
  std::vector<std::pair<TokenId, TokenId>> pairs(options.sampled_pairs);
  RandomStream rng = MakeStream(options.seed, StreamDomain::kVerification, 0);
  for (auto& pr : pairs) {
    const auto x = static_cast<TokenId>(rng.NextBits() % n);
    auto xp = static_cast<TokenId>(rng.NextBits() % (n - 1));
    if (xp >= x) ++xp;
    pr = {x, xp};
  }
  std::vector<Scan> partial(ChunkCount(pairs.size(), options.threads));
  ParallelFor(pairs.size(), options.threads,
              [&](std::size_t begin, std::size_t end, std::size_t chunk) {
                Scan& scan = partial[chunk];
                for (std::size_t i = begin; i < end; ++i) {
                  const auto [x, xp] = pairs[i];
                  const Eigen::VectorXd row_x = rows(x);
                  const Eigen::VectorXd row_xp = rows(xp);
                  ScanPair(LogOf(row_x), LogOf(row_xp), x, xp, spec, scan);
                  if (spec.kind == BoundKind::kUmldp) {
                    ScanUnprotected(row_x, x, spec, scan);
                    ScanUnprotected(row_xp, xp, spec, scan);
                  }
                }
              });
  Scan total;
  for (const auto& s : partial) total.Merge(s);
  return Finish(spec, total, false, options);
}

void RequireSquare(const Eigen::Ref<const Eigen::MatrixXd>& transition,
                   std::size_t n) {
  if (transition.rows() != transition.cols() ||
      static_cast<std::size_t>(transition.rows()) != n) {
    throw Error(ErrorCode::kInvalidArgument,
                "transition matrix must be |V| x |V|");
  }
}

DPVerificationResult VerifyMatrix(
    const Eigen::Ref<const Eigen::MatrixXd>& transition, const BoundSpec& spec,
    const VerifyOptions& options) {
  const auto n = static_cast<std::size_t>(transition.rows());
  if (n <= options.exhaustive_cap || n < 2) {
    return VerifyExhaustive(transition, spec, options);
  }
  return VerifySampled(
      n,
      [&](TokenId x) -> Eigen::VectorXd { return transition.row(x).transpose(); },
      spec, options);
}

DPVerificationResult VerifyModel(const ProbabilityModel& model,
                                 const BoundSpec& spec,
                                 const VerifyOptions& options) {
  const std::size_t n = model.vocab_size();
  if (n <= options.exhaustive_cap || n < 2) {
    return VerifyExhaustive(model.DenseMatrix(), spec, options);
  }
  return VerifySampled(
      n, [&](TokenId x) { return model.DenseRow(x); }, spec, options);
}

BoundSpec MakeUmldpSpec(const SensitivityPartition& partition,
                        const EmbeddingMatrix& embeddings, double epsilon,
                        double p) {
  if (!(p >= 0.0 && p <= 1.0)) {
    throw Error(ErrorCode::kInvalidArgument, "p must lie in [0, 1]");
  }
  BoundSpec spec;
  spec.kind = BoundKind::kUmldp;
  spec.epsilon = epsilon;
  spec.p = p;
  spec.epsilon0 = p > 0.0 ? std::log(1.0 / p) : kInf;
  spec.embeddings = &embeddings;
  spec.partition = &partition;
  return spec;
}

}  // namespace

std::string_view ToString(BoundKind kind) {
  switch (kind) {
    case BoundKind::kMldp:
      return "mldp";
    case BoundKind::kUmldp:
      return "umldp";
    case BoundKind::kLdp:
      return "ldp";
  }
  return "unknown";
}

DPVerificationResult VerifyMldp(
    const Eigen::Ref<const Eigen::MatrixXd>& transition,
    const EmbeddingMatrix& embeddings, double epsilon,
    const VerifyOptions& options) {
  RequireSquare(transition, static_cast<std::size_t>(embeddings.size()));
  BoundSpec spec;
  spec.kind = BoundKind::kMldp;
  spec.epsilon = epsilon;
  spec.embeddings = &embeddings;
  return VerifyMatrix(transition, spec, options);
}

DPVerificationResult VerifyUmldp(
    const Eigen::Ref<const Eigen::MatrixXd>& transition,
    const SensitivityPartition& partition, const EmbeddingMatrix& embeddings,
    double epsilon, double p, const VerifyOptions& options) {
  RequireSquare(transition, static_cast<std::size_t>(embeddings.size()));
  RequireSquare(transition, partition.size());
  return VerifyMatrix(transition,
                      MakeUmldpSpec(partition, embeddings, epsilon, p), options);
}

DPVerificationResult VerifyLdp(
    const Eigen::Ref<const Eigen::MatrixXd>& transition, double epsilon,
    const VerifyOptions& options) {
  RequireSquare(transition, static_cast<std::size_t>(transition.rows()));
  BoundSpec spec;
  spec.kind = BoundKind::kLdp;
  spec.epsilon = epsilon;
  return VerifyMatrix(transition, spec, options);
}

DPVerificationResult VerifyMldp(const ProbabilityModel& model,
                                const EmbeddingMatrix& embeddings,
                                double epsilon, const VerifyOptions& options) {
  if (static_cast<std::size_t>(embeddings.size()) != model.vocab_size()) {
    throw Error(ErrorCode::kInvalidArgument,
                "embeddings do not match the model");
  }
  BoundSpec spec;
  spec.kind = BoundKind::kMldp;
  spec.epsilon = epsilon;
  spec.embeddings = &embeddings;
  return VerifyModel(model, spec, options);
}

DPVerificationResult VerifyUmldp(const ProbabilityModel& model,
                                 const SensitivityPartition& partition,
                                 const EmbeddingMatrix& embeddings,
                                 double epsilon, double p,
                                 const VerifyOptions& options) {
  if (partition.size() != model.vocab_size() ||
      static_cast<std::size_t>(embeddings.size()) != model.vocab_size()) {
    throw Error(ErrorCode::kInvalidArgument,
                "partition or embeddings do not match the model");
  }
  return VerifyModel(model, MakeUmldpSpec(partition, embeddings, epsilon, p),
                     options);
}

DPVerificationResult VerifyLdp(const ProbabilityModel& model, double epsilon,
                               const VerifyOptions& options) {
  BoundSpec spec;
  spec.kind = BoundKind::kLdp;
  spec.epsilon = epsilon;
  return VerifyModel(model, spec, options);
}

}  // namespace santext
