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

// Command-line front end: build-vocab, precompute, sanitize, audit, verify-dp
// and attack-eval. Exit status 0 on success, 2 on usage or configuration
// errors, 1 on data errors and failed verifications.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <unordered_set>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "santext/attack.h"
#include "santext/corpus.h"
#include "santext/dp_verify.h"
#include "santext/embedding.h"
#include "santext/error.h"
#include "santext/hashing.h"
#include "santext/mechanism.h"
#include "santext/privacy_stats.h"
#include "santext/report_json.h"
#include "santext/sanitizer.h"
#include "santext/vocab.h"

namespace santext {
namespace {

using nlohmann::json;

struct RunConfig {
  std::string subcommand;
  std::string input;
  std::string output;
  std::string vocab;
  std::string freq;
  std::string embeddings;
  std::string embedding_cache;
  std::string external_vocab;
  std::string model;
  std::string csv;
  std::string mechanism = "santext";
  std::vector<double> epsilons;
  double p = 0.3;
  double w = 0.9;
  std::uint64_t seed = 0;
  int runs = kDefaultAuditRuns;
  std::string mem_budget = "4G";
  int threads = 1;
  std::string tokenizer = "pretokenized";
  bool tsv = false;
  int text_column = 0;
  bool header = false;
  // verify-dp
  std::optional<double> ldp_epsilon;
  std::size_t exhaustive_cap = 200;
  std::size_t sampled_pairs = 2000;
  // attack-eval
  std::string raw;
  std::string sanitized;
  std::string predictor = "unigram";
  int order = 3;
  std::string public_corpus;
  std::string predictions;
};

// Every setting that can change an output. Thread count is excluded.
json ConfigJson(const RunConfig& c) {
  return {{"subcommand", c.subcommand},
          {"mechanism", c.mechanism},
          {"epsilon", c.epsilons},
          {"p", c.p},
          {"w", c.w},
          {"seed", c.seed},
          {"runs", c.runs},
          {"tokenizer", c.tokenizer},
          {"tsv", c.tsv},
          {"text_column", c.text_column},
          {"header", c.header},
          {"predictor", c.predictor},
          {"order", c.order},
          {"ldp_epsilon", c.ldp_epsilon ? json(*c.ldp_epsilon) : json(nullptr)},
          {"exhaustive_cap", c.exhaustive_cap},
          {"sampled_pairs", c.sampled_pairs}};
}

std::string ConfigHash(const RunConfig& c, std::uint64_t content_hash) {
  Fnv1a h;
  h.Update(ConfigJson(c).dump());
  h.UpdateU64(content_hash);
  return HexDigest(h.digest());
}

Error UsageError(const std::string& message) {
  return Error(ErrorCode::kInvalidArgument, message);
}

std::uint64_t ParseBytes(const std::string& text) {
  std::size_t used = 0;
  double value = 0;
  try {
    value = std::stod(text, &used);
  } catch (const std::exception&) {
    throw UsageError("bad --mem-budget '" + text + "'");
  }
  std::string suffix = text.substr(used);
  double scale = 1;
  if (suffix == "K" || suffix == "k") scale = 1024.0;
  else if (suffix == "M" || suffix == "m") scale = 1024.0 * 1024;
  else if (suffix == "G" || suffix == "g") scale = 1024.0 * 1024 * 1024;
  else if (!suffix.empty()) throw UsageError("bad --mem-budget suffix '" + suffix + "'");
  if (!(value > 0)) throw UsageError("--mem-budget must be positive");
  return static_cast<std::uint64_t>(value * scale);
}

CorpusFormat FormatOf(const RunConfig& c) {
  CorpusFormat f;
  auto mode = ParseTokenizerMode(c.tokenizer);
  if (!mode) throw UsageError("unknown --tokenizer '" + c.tokenizer + "'");
  f.tokenizer = *mode;
  f.tsv = c.tsv;
  f.text_column = c.text_column;
  f.header = c.header;
  return f;
}

MechanismKind KindOf(const RunConfig& c) {
  auto kind = ParseMechanismKind(c.mechanism);
  if (!kind) throw UsageError("unknown --mechanism '" + c.mechanism + "'");
  return *kind;
}

void RequirePath(const std::string& path, const std::string& flag) {
  if (path.empty()) throw UsageError(flag + " is required");
  if (!std::filesystem::exists(path)) {
    throw Error(ErrorCode::kNotFound, "input path does not exist: " + path);
  }
}

std::vector<double> Epsilons(const RunConfig& c) {
  if (c.epsilons.empty()) throw UsageError("--epsilon is required");
  return c.epsilons;
}

std::string FormatEpsilon(double eps) {
  std::ostringstream os;
  os << eps;
  return os.str();
}

// Output path for one point of a sweep; unchanged for a single epsilon.
std::string SweepPath(const std::string& base, double eps, bool sweep) {
  if (!sweep) return base;
  return base + ".eps" + FormatEpsilon(eps);
}

// Vocabulary, counts, embeddings and (for SanText+) the partition, loaded
// once and shared across a sweep.
struct Resources {
  Vocabulary vocab;
  FrequencyTable freq;
  std::shared_ptr<const EmbeddingMatrix> embeddings;
  std::optional<SensitivityPartition> partition;
  std::vector<std::string> dropped;
  std::uint64_t content_hash = 0;
};

EmbeddingMatrix LoadEmbeddingsFor(const RunConfig& c, const Vocabulary& vocab,
                                  std::vector<std::string>& missing) {
  if (!c.embedding_cache.empty() && std::filesystem::exists(c.embedding_cache)) {
    std::ifstream in(c.embedding_cache, std::ios::binary);
    try {
      return ReadEmbeddingCache(in, vocab);
    } catch (const Error& e) {
      std::cerr << "warning: ignoring embedding cache " << c.embedding_cache
                << ": " << e.what() << "\n";
    }
  }
  GloveLoadResult loaded;
  try {
    loaded = LoadGloveText(c.embeddings, vocab);
  } catch (const Error& e) {
    throw Error(e.code(), c.embeddings + ": " + e.what());
  }
  if (loaded.duplicate_vectors > 0) {
    std::cerr << "warning: " << loaded.duplicate_vectors
              << " vocabulary tokens share an embedding vector with another "
                 "token\n";
  }
  missing = loaded.missing;
  return std::move(loaded.embeddings);
}

Resources LoadResources(const RunConfig& c, MechanismKind kind) {
  RequirePath(c.vocab, "--vocab");
  RequirePath(c.embeddings, "--embeddings");
  Resources r;
  VocabBuildResult built;
  built.vocabulary = Vocabulary(ReadTokenList(c.vocab));
  if (built.vocabulary.empty()) {
    throw Error(ErrorCode::kConfiguration, c.vocab + ": vocabulary is empty");
  }
  if (!c.freq.empty()) {
    RequirePath(c.freq, "--freq");
    built.frequencies = ReadFrequencies(c.freq, built.vocabulary);
  } else if (kind == MechanismKind::kSanTextPlus) {
    throw UsageError("santext_plus needs --freq to partition the vocabulary");
  } else {
    built.frequencies.counts.assign(built.vocabulary.size(), 0);
  }

  std::vector<std::string> missing;
  EmbeddingMatrix matrix = LoadEmbeddingsFor(c, built.vocabulary, missing);
  if (!missing.empty()) {
    std::cerr << "warning: " << missing.size()
              << " vocabulary tokens have no embedding and pass through "
                 "unchanged\n";
    const VocabBuildResult kept = DropTokens(built, missing);
    EmbeddingMatrix::Matrix rows(static_cast<Eigen::Index>(kept.vocabulary.size()),
                                 matrix.dim());
    for (std::size_t i = 0; i < kept.vocabulary.size(); ++i) {
      const TokenId old = *built.vocabulary.Find(
          kept.vocabulary.token(static_cast<TokenId>(i)));
      rows.row(static_cast<Eigen::Index>(i)) = matrix.matrix().row(old);
    }
    matrix = EmbeddingMatrix(std::move(rows));
    built = kept;
  } else if (!c.embedding_cache.empty() &&
             !std::filesystem::exists(c.embedding_cache)) {
    std::ofstream out(c.embedding_cache, std::ios::binary);
    WriteEmbeddingCache(out, matrix, built.vocabulary);
  }
  r.dropped = std::move(missing);
  r.vocab = std::move(built.vocabulary);
  r.freq = std::move(built.frequencies);
  r.embeddings = std::make_shared<const EmbeddingMatrix>(std::move(matrix));
  if (kind == MechanismKind::kSanTextPlus) {
    r.partition = PartitionSensitivity(r.vocab, r.freq, c.w);
  }
  Fnv1a h;
  h.UpdateU64(r.vocab.ContentHash());
  h.UpdateU64(r.embeddings->ContentHash());
  h.UpdateU64(r.partition ? r.partition->ContentHash() : 0);
  r.content_hash = h.digest();
  return r;
}

MechanismConfig MechanismFor(const RunConfig& c, double eps) {
  MechanismConfig m;
  m.kind = KindOf(c);
  m.epsilon = eps;
  m.p = c.p;
  m.seed = c.seed;
  m.Validate();
  return m;
}

ModelOptions ModelOptionsFor(const RunConfig& c) {
  ModelOptions o;
  o.memory_budget_bytes = ParseBytes(c.mem_budget);
  o.threads = c.threads;
  return o;
}

ProbabilityModel BuildModel(const RunConfig& c, const Resources& r,
                            double eps) {
  const MechanismConfig m = MechanismFor(c, eps);
  if (!c.model.empty()) {
    RequirePath(c.model, "--model");
    std::ifstream in(c.model, std::ios::binary);
    ProbabilityModel loaded =
        ProbabilityModel::Load(in, r.vocab.ContentHash(), r.embeddings,
                               r.partition ? &*r.partition : nullptr,
                               ModelOptionsFor(c));
    const MechanismConfig& s = loaded.config();
    if (s.kind != m.kind || s.epsilon != m.epsilon ||
        (m.kind == MechanismKind::kSanTextPlus && s.p != m.p)) {
      throw Error(ErrorCode::kConfiguration,
                  c.model + ": model was built with mechanism " +
                      std::string(ToString(s.kind)) + ", epsilon " +
                      FormatEpsilon(s.epsilon) + ", p " + FormatEpsilon(s.p));
    }
    return loaded;
  }
  return ProbabilityModel::Build(r.embeddings,
                                 r.partition ? &*r.partition : nullptr, m,
                                 ModelOptionsFor(c));
}

json RunHeader(const RunConfig& c, const Resources& r) {
  return {{"config_hash", ConfigHash(c, r.content_hash)},
          {"config", ConfigJson(c)},
          {"vocab_size", r.vocab.size()},
          {"embedding_dim", r.embeddings->dim()},
          {"tokens_without_embedding", r.dropped.size()},
          {"sensitive_tokens",
           r.partition ? json(r.partition->sensitive_ids().size())
                       : json(nullptr)}};
}

// ---------------------------------------------------------------- commands

int CmdBuildVocab(const RunConfig& c) {
  RequirePath(c.input, "--input");
  if (c.vocab.empty()) throw UsageError("--vocab (output path) is required");
  if (c.freq.empty()) throw UsageError("--freq (output path) is required");
  const Corpus corpus = ReadCorpus(c.input, FormatOf(c));
  const auto docs = corpus.TokenLists();

  VocabBuildOptions options;
  options.threads = c.threads;
  if (!c.external_vocab.empty()) {
    RequirePath(c.external_vocab, "--external-vocab");
    options.external_vocab = ReadTokenList(c.external_vocab);
  }
  std::unordered_set<std::string> glove;
  if (!c.embeddings.empty()) {
    RequirePath(c.embeddings, "--embeddings");
    glove = ScanGloveTokens(c.embeddings);
    options.token_filter = [&glove](const std::string& t) {
      return glove.count(t) != 0;
    };
  }
  const VocabBuildResult built = BuildVocab(docs, options);
  WriteTokenList(c.vocab, built.vocabulary.tokens());
  WriteFrequencies(c.freq, built.vocabulary, built.frequencies);

  const SensitivityPartition partition =
      PartitionSensitivity(built.vocabulary, built.frequencies, c.w);
  json meta = {{"config_hash", ConfigHash(c, built.vocabulary.ContentHash())},
               {"config", ConfigJson(c)},
               {"documents", docs.size()},
               {"vocab_size", built.vocabulary.size()},
               {"corpus_tokens", built.corpus_tokens},
               {"oov_occurrences", built.oov_occurrences},
               {"oov_types", built.oov_types},
               {"sensitive_tokens", partition.sensitive_ids().size()},
               {"nonsensitive_tokens", partition.nonsensitive_ids().size()}};
  WriteJson(c.vocab + ".meta.json", meta);
  std::cout << "vocabulary: " << built.vocabulary.size() << " tokens ("
            << partition.sensitive_ids().size() << " sensitive at w=" << c.w
            << "), " << built.oov_occurrences << " OOV occurrences\n";
  return 0;
}

int CmdPrecompute(const RunConfig& c) {
  if (c.output.empty()) throw UsageError("--output is required");
  const auto eps = Epsilons(c);
  if (eps.size() != 1) throw UsageError("precompute takes a single --epsilon");
  const MechanismKind kind = KindOf(c);
  const Resources r = LoadResources(c, kind);
  ModelOptions options = ModelOptionsFor(c);
  const auto start = std::chrono::steady_clock::now();
  ProbabilityModel model =
      ProbabilityModel::Build(r.embeddings, r.partition ? &*r.partition : nullptr,
                              MechanismFor(c, eps[0]), options);
  if (model.layout() != ModelLayout::kFullMatrix) {
    throw Error(ErrorCode::kConfiguration,
                "the full matrix does not fit in --mem-budget; raise the "
                "budget or sanitize with lazy rows instead");
  }
  const double seconds = std::chrono::duration<double>(
                             std::chrono::steady_clock::now() - start)
                             .count();
  std::ofstream out(c.output, std::ios::binary);
  if (!out) throw Error(ErrorCode::kIo, "cannot write " + c.output);
  model.Save(out, r.vocab.ContentHash());
  json meta = RunHeader(c, r);
  meta["precompute_seconds"] = seconds;
  meta["targets"] = model.targets().size();
  WriteJson(c.output + ".meta.json", meta);
  std::cout << "model: " << r.vocab.size() << " x " << model.targets().size()
            << " in " << seconds << " s\n";
  return 0;
}

int CmdSanitize(const RunConfig& c) {
  RequirePath(c.input, "--input");
  if (c.output.empty()) throw UsageError("--output is required");
  const auto eps = Epsilons(c);
  if (!c.model.empty() && eps.size() != 1) {
    throw UsageError("--model cannot be combined with an epsilon sweep");
  }
  const MechanismKind kind = KindOf(c);
  const Resources r = LoadResources(c, kind);
  const Corpus corpus = ReadCorpus(c.input, FormatOf(c));
  const bool sweep = eps.size() > 1;
  for (double e : eps) {
    const auto start = std::chrono::steady_clock::now();
    ProbabilityModel model = BuildModel(c, r, e);
    const double build_seconds = std::chrono::duration<double>(
                                     std::chrono::steady_clock::now() - start)
                                     .count();
    const SanitizedCorpus out =
        SanitizeCorpus(corpus, r.vocab, model, c.seed, c.threads);
    const std::string path = SweepPath(c.output, e, sweep);
    WriteSanitizedCorpus(path, out);
    json stats = RunHeader(c, r);
    stats["epsilon"] = e;
    stats["layout"] = std::string(ToString(model.layout()));
    stats["model_seconds"] = build_seconds;
    stats["sanitize"] = ToJson(out.stats);
    WriteJson(path + ".stats.json", stats);
    std::cout << path << ": " << out.stats.tokens << " tokens, "
              << out.stats.oov_tokens << " OOV, "
              << out.stats.self_substitutions << " unchanged\n";
  }
  return 0;
}

int CmdAudit(const RunConfig& c) {
  if (c.output.empty()) throw UsageError("--output is required");
  const auto eps = Epsilons(c);
  const MechanismKind kind = KindOf(c);
  const Resources r = LoadResources(c, kind);
  const bool sweep = eps.size() > 1;
  std::ofstream csv;
  if (!c.csv.empty()) {
    csv.open(c.csv);
    if (!csv) throw Error(ErrorCode::kIo, "cannot write " + c.csv);
    csv << "# config_hash=" << ConfigHash(c, r.content_hash) << "\n";
    csv << "epsilon,N_x_q1,N_x_median,N_x_q3,S_x_q1,S_x_median,S_x_q3,"
           "S_star_y_q1,S_star_y_median,S_star_y_q3\n";
  }
  for (double e : eps) {
    ProbabilityModel model = BuildModel(c, r, e);
    const PrivacyReport report =
        EstimatePrivacyStats(model, c.runs, c.seed, c.threads);
    json j = RunHeader(c, r);
    j["epsilon"] = e;
    j["report"] = ToJson(report, r.vocab);
    WriteJson(SweepPath(c.output, e, sweep), j);
    if (csv.is_open()) {
      const auto& n = report.self_rate_quantiles;
      const auto& s = report.output_support_quantiles;
      const auto& t = report.input_support_quantiles;
      csv << e << ',' << n.q1 << ',' << n.median << ',' << n.q3 << ',' << s.q1
          << ',' << s.median << ',' << s.q3 << ',' << t.q1 << ',' << t.median
          << ',' << t.q3 << '\n';
    }
    std::cout << "epsilon " << e << ": median N_x "
              << report.self_rate_quantiles.median << ", median S_x "
              << report.output_support_quantiles.median << ", median S*_y "
              << report.input_support_quantiles.median << "\n";
  }
  return 0;
}

int CmdVerifyDp(const RunConfig& c) {
  if (c.output.empty()) throw UsageError("--output is required");
  const auto eps = Epsilons(c);
  const MechanismKind kind = KindOf(c);
  const Resources r = LoadResources(c, kind);
  VerifyOptions options;
  options.exhaustive_cap = c.exhaustive_cap;
  options.sampled_pairs = c.sampled_pairs;
  options.seed = c.seed;
  options.threads = c.threads;

  json out = RunHeader(c, r);
  out["results"] = json::array();
  bool all_passed = true;
  for (double e : eps) {
    ProbabilityModel model = BuildModel(c, r, e);
    DPVerificationResult result =
        kind == MechanismKind::kSanTextPlus
            ? VerifyUmldp(model, *r.partition, *r.embeddings, e, c.p, options)
            : VerifyMldp(model, *r.embeddings, e, options);
    json entry = {{"epsilon", e}, {"verification", ToJson(result, r.vocab)}};
    all_passed = all_passed && result.passed;
    std::cout << "epsilon " << e << ": " << ToString(result.bound) << " "
              << (result.passed ? "passed" : "FAILED")
              << ", max log-ratio excess " << result.max_log_ratio_excess
              << "\n";
    if (c.ldp_epsilon) {
      const DPVerificationResult ldp = VerifyLdp(model, *c.ldp_epsilon, options);
      entry["ldp"] = ToJson(ldp, r.vocab);
      std::cout << "  pure LDP at " << *c.ldp_epsilon << ": "
                << (ldp.passed ? "holds" : "does not hold") << "\n";
    }
    out["results"].push_back(std::move(entry));
  }
  out["passed"] = all_passed;
  WriteJson(c.output, out);
  return all_passed ? 0 : 1;
}

std::unique_ptr<Predictor> MakePredictor(const RunConfig& c,
                                         const Corpus& fallback_corpus) {
  if (c.predictor == "external") {
    RequirePath(c.predictions, "--predictions");
    return std::make_unique<ExternalPredictor>(
        ExternalPredictor::FromFile(c.predictions));
  }
  int order;
  if (c.predictor == "unigram") {
    order = 1;
  } else if (c.predictor == "ngram") {
    order = c.order;
  } else {
    throw UsageError("unknown --predictor '" + c.predictor + "'");
  }
  std::vector<std::vector<std::string>> training;
  if (!c.public_corpus.empty()) {
    RequirePath(c.public_corpus, "--public-corpus");
    training = ReadCorpus(c.public_corpus, FormatOf(c)).TokenLists();
  } else {
    training = fallback_corpus.TokenLists();
  }
  return std::make_unique<NgramPredictor>(TrainNgramPredictor(training, order));
}

std::vector<std::vector<std::string>> TokensOfLines(
    const SanitizedCorpus& corpus) {
  std::vector<std::vector<std::string>> out;
  out.reserve(corpus.lines.size());
  for (const auto& line : corpus.lines) {
    out.push_back(Tokenize(line, TokenizerMode::kPretokenized));
  }
  return out;
}

int CmdAttackEval(const RunConfig& c) {
  if (c.output.empty()) throw UsageError("--output is required");
  RequirePath(c.raw, "--raw");
  CorpusFormat format = FormatOf(c);
  const Corpus raw = ReadCorpus(c.raw, format);
  const auto raw_tokens = raw.TokenLists();
  const auto predictor = MakePredictor(c, raw);

  json out = {{"predictor", c.predictor},
              {"order", c.predictor == "ngram" ? json(c.order) : json(nullptr)}};
  if (!c.sanitized.empty()) {
    RequirePath(c.sanitized, "--sanitized");
    const auto san_tokens = ReadCorpus(c.sanitized, format).TokenLists();
    const AttackReport report =
        RunAttack(raw_tokens, san_tokens, *predictor, c.threads);
    out["config_hash"] = ConfigHash(c, 0);
    out["config"] = ConfigJson(c);
    out["report"] = ToJson(report);
    WriteJson(c.output, out);
    std::cout << "defense rate " << report.defense_rate << " over "
              << report.total_positions << " positions\n";
    return 0;
  }

  if (c.predictor == "external") {
    throw UsageError(
        "external predictions are tied to one sanitized file; pass "
        "--sanitized");
  }
  const auto eps = Epsilons(c);
  const MechanismKind kind = KindOf(c);
  const Resources r = LoadResources(c, kind);
  out.update(RunHeader(c, r));
  const AttackReport baseline =
      RunAttack(raw_tokens, raw_tokens, *predictor, c.threads);
  out["unsanitized"] = ToJson(baseline);
  out["series"] = json::array();

  // Text column only.
  format.tsv = false;
  Corpus text_only;
  text_only.format = format;
  for (const auto& rec : raw.records) {
    CorpusRecord t;
    t.id = rec.id;
    t.tokens = rec.tokens;
    text_only.records.push_back(std::move(t));
  }
  std::ofstream csv;
  if (!c.csv.empty()) {
    csv.open(c.csv);
    if (!csv) throw Error(ErrorCode::kIo, "cannot write " + c.csv);
    csv << "# config_hash=" << ConfigHash(c, r.content_hash) << "\n";
    csv << "epsilon,total_positions,matched,defense_rate\n";
    csv << "unsanitized," << baseline.total_positions << ','
        << baseline.matched << ',' << baseline.defense_rate << '\n';
  }
  for (double e : eps) {
    ProbabilityModel model = BuildModel(c, r, e);
    const SanitizedCorpus san =
        SanitizeCorpus(text_only, r.vocab, model, c.seed, c.threads);
    const AttackReport report =
        RunAttack(raw_tokens, TokensOfLines(san), *predictor, c.threads);
    out["series"].push_back({{"epsilon", e}, {"report", ToJson(report)}});
    if (csv.is_open()) {
      csv << e << ',' << report.total_positions << ',' << report.matched << ','
          << report.defense_rate << '\n';
    }
    std::cout << "epsilon " << e << ": defense rate " << report.defense_rate
              << "\n";
  }
  WriteJson(c.output, out);
  return 0;
}

// ---------------------------------------------------------------- parsing

void AddCorpusFlags(CLI::App* cmd, RunConfig& c) {
  cmd->add_option("--tokenizer", c.tokenizer, "whitespace | pretokenized")
      ->check(CLI::IsMember({"whitespace", "pretokenized"}));
  cmd->add_flag("--tsv", c.tsv, "Input is tab-separated");
  cmd->add_option("--text-column", c.text_column, "TSV column holding text")
      ->check(CLI::NonNegativeNumber);
  cmd->add_flag("--header", c.header, "First line is a header");
}

void AddResourceFlags(CLI::App* cmd, RunConfig& c) {
  cmd->add_option("--vocab", c.vocab, "Vocabulary file, one token per line");
  cmd->add_option("--freq", c.freq, "Frequency file, token<TAB>count");
  cmd->add_option("--embeddings", c.embeddings, "GloVe text embeddings");
  cmd->add_option("--embedding-cache", c.embedding_cache,
                  "Binary embedding cache (read if valid, else written)");
}

void AddMechanismFlags(CLI::App* cmd, RunConfig& c, bool sweep) {
  cmd->add_option("--mechanism", c.mechanism,
                  "santext | santext_plus | uniform_random")
      ->check(CLI::IsMember({"santext", "santext_plus", "santext+",
                             "uniform_random", "random"}));
  auto* eps = cmd->add_option("--epsilon", c.epsilons,
                              sweep ? "Privacy parameter (repeatable)"
                                    : "Privacy parameter")
                  ->check(CLI::NonNegativeNumber);
  eps->expected(1, sweep ? -1 : 1);
  eps->allow_extra_args(false);
  cmd->add_option("--p", c.p, "SanText+ replacement probability")
      ->check(CLI::Range(0.0, 1.0));
  cmd->add_option("--w", c.w, "Fraction of rarest tokens marked sensitive")
      ->check(CLI::Range(0.0, 1.0));
  cmd->add_option("--mem-budget", c.mem_budget,
                  "Full-matrix memory budget, e.g. 512M or 4G");
  cmd->add_option("--model", c.model, "Precomputed model file");
}

void AddCommonFlags(CLI::App* cmd, RunConfig& c) {
  cmd->add_option("--seed", c.seed, "Master random seed");
  cmd->add_option("--threads", c.threads, "Worker threads")
      ->check(CLI::Range(1, 1024));
}

}  // namespace
}  // namespace santext

int main(int argc, char** argv) {
  using namespace santext;
  RunConfig c;
  CLI::App app{"Token-level text sanitization with metric local differential "
               "privacy"};
  app.require_subcommand(1);

  auto* build_vocab = app.add_subcommand("build-vocab",
                                         "Build vocabulary and frequencies");
  build_vocab->add_option("--input", c.input, "Corpus, one document per line");
  build_vocab->add_option("--vocab", c.vocab, "Output vocabulary file");
  build_vocab->add_option("--freq", c.freq, "Output frequency file");
  build_vocab->add_option("--embeddings", c.embeddings,
                          "Keep only tokens present in these embeddings");
  build_vocab->add_option("--external-vocab", c.external_vocab,
                          "Use this fixed token list instead");
  build_vocab->add_option("--w", c.w, "Sensitive fraction to report")
      ->check(CLI::Range(0.0, 1.0));
  AddCorpusFlags(build_vocab, c);
  AddCommonFlags(build_vocab, c);

  auto* precompute = app.add_subcommand("precompute",
                                        "Materialize and save the model");
  precompute->add_option("--output", c.output, "Model file");
  AddResourceFlags(precompute, c);
  AddMechanismFlags(precompute, c, false);
  AddCommonFlags(precompute, c);

  auto* sanitize = app.add_subcommand("sanitize", "Sanitize a corpus");
  sanitize->add_option("--input", c.input, "Corpus, one document per line");
  sanitize->add_option("--output", c.output, "Sanitized corpus");
  AddResourceFlags(sanitize, c);
  AddMechanismFlags(sanitize, c, true);
  AddCorpusFlags(sanitize, c);
  AddCommonFlags(sanitize, c);

  auto* audit = app.add_subcommand("audit", "Monte Carlo privacy statistics");
  audit->add_option("--output", c.output, "JSON report");
  audit->add_option("--csv", c.csv, "Per-epsilon quantile CSV");
  audit->add_option("--runs", c.runs, "Draws per token")
      ->check(CLI::PositiveNumber);
  AddResourceFlags(audit, c);
  AddMechanismFlags(audit, c, true);
  AddCommonFlags(audit, c);

  auto* verify = app.add_subcommand("verify-dp",
                                    "Check the MLDP / UMLDP inequalities");
  verify->add_option("--output", c.output, "JSON result");
  verify->add_option("--ldp-epsilon", c.ldp_epsilon,
                     "Also test metric-free epsilon-LDP at this level")
      ->check(CLI::NonNegativeNumber);
  verify->add_option("--cap", c.exhaustive_cap,
                     "Largest vocabulary checked exhaustively");
  verify->add_option("--sampled-pairs", c.sampled_pairs,
                     "Input pairs checked above the cap")
      ->check(CLI::PositiveNumber);
  AddResourceFlags(verify, c);
  AddMechanismFlags(verify, c, true);
  AddCommonFlags(verify, c);

  auto* attack = app.add_subcommand("attack-eval",
                                    "Mask-token inference defense rate");
  attack->add_option("--raw", c.raw, "Original corpus");
  attack->add_option("--sanitized", c.sanitized, "Sanitized corpus");
  attack->add_option("--output", c.output, "JSON report");
  attack->add_option("--csv", c.csv, "Per-epsilon defense-rate CSV");
  attack->add_option("--predictor", c.predictor,
                     "unigram | ngram | external")
      ->check(CLI::IsMember({"unigram", "ngram", "external"}));
  attack->add_option("--order", c.order, "n-gram order")
      ->check(CLI::Range(1, 3));
  attack->add_option("--public-corpus", c.public_corpus,
                     "Attacker training corpus (default: the raw corpus)");
  attack->add_option("--predictions", c.predictions,
                     "External predictions, JSON Lines");
  AddResourceFlags(attack, c);
  AddMechanismFlags(attack, c, true);
  AddCorpusFlags(attack, c);
  AddCommonFlags(attack, c);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (*build_vocab) { c.subcommand = "build-vocab"; return CmdBuildVocab(c); }
    if (*precompute) { c.subcommand = "precompute"; return CmdPrecompute(c); }
    if (*sanitize) { c.subcommand = "sanitize"; return CmdSanitize(c); }
    if (*audit) { c.subcommand = "audit"; return CmdAudit(c); }
    if (*verify) { c.subcommand = "verify-dp"; return CmdVerifyDp(c); }
    if (*attack) { c.subcommand = "attack-eval"; return CmdAttackEval(c); }
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    switch (e.code()) {
      case ErrorCode::kInvalidArgument:
      case ErrorCode::kConfiguration:
      case ErrorCode::kNotFound:
        return 2;
      default:
        return 1;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
