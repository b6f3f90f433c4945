// Copyright 2026 The kgcrawl Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <filesystem>
#include <functional>
#include <mutex>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "kgcrawl/kb_core.hpp"
#include "kgcrawl/lm_backend.hpp"
#include "kgcrawl/reference_kb.hpp"

namespace kgcrawl {

struct Decoding {
  enum class Mode { kGreedy, kSampling };

  Mode mode = Mode::kGreedy;
  int n_samples = kSamplingCount;
  double temperature = kSamplingTemperature;

  static Decoding greedy() { return {}; }
  static Decoding sampling(int n = kSamplingCount,
                           double temperature = kSamplingTemperature) {
    return {Mode::kSampling, n, temperature};
  }

  CompletionRequest request(std::string prompt,
                            int max_tokens = kListMaxTokens) const;

  friend bool operator==(const Decoding&, const Decoding&) = default;
};

struct CrawlConfig {
  int max_depth = 2;
  Decoding decoding;
  bool use_dk = true;
  bool use_subject_paraphrasing = true;
  bool use_relation_paraphrasing = true;
  std::size_t vote_threshold = 2;
  double dedup_threshold = kDefaultDedupThreshold;
  std::optional<std::size_t> max_relations_per_entity;
  /// Count votes over distinct relation realizations instead of distinct
  /// (subject, relation) realization pairs.
  bool votes_from_relation_realizations_only = false;
  /// Do not expand objects that look like numbers or dates.
  bool skip_literal_objects = false;
  std::size_t max_in_flight = 4;

  /// Relation and pure object generation only, greedy decoding.
  static CrawlConfig pure_greedy();

  /// Throws std::invalid_argument when an invariant is violated.
  void validate() const;
};

/// Demonstrations for the three Q/A sub-tasks.
struct PromptSet {
  std::vector<InContextExample> relation_generation;
  std::vector<InContextExample> pure_object_generation;
  std::vector<InContextExample> dk_object_generation;

  /// Reads relation_generation.txt, pure_object_generation.txt and
  /// dk_object_generation.txt from `dir`.
  static PromptSet load(const std::filesystem::path& dir);
};

struct ObjectCandidate {
  EntityName object;
  std::vector<Realization> provenance;
  bool accepted = false;

  std::size_t votes() const noexcept { return provenance.size(); }
};

struct RelationExpansion {
  RelationName relation;
  std::vector<std::string> realizations;
  /// Realization pairs whose query succeeded.
  std::size_t queried = 0;
  /// Votes needed for acceptance: min(vote_threshold, realizations queried).
  std::size_t vote_bound = 0;
  std::vector<ObjectCandidate> candidates;
};

struct ExpansionRecord {
  EntityName entity;
  int depth = 1;
  /// Original entity text first, then accepted paraphrases.
  std::vector<std::string> subject_realizations;
  std::vector<RelationExpansion> relations;

  /// (entity, relation, object) for every accepted candidate, using the
  /// canonical entity and relation strings.
  std::vector<Triplet> triplets() const;
};

class CrawlError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct CrawlResult {
  KnowledgeGraph graph;
  std::vector<ExpansionRecord> expansions;
};

class CrawlCheckpoint;

/// Seed expansion: subject paraphrasing, relation generation, relation
/// paraphrasing, object generation with voting. Queries within a stage may
/// run concurrently; merging always follows (subject realization, relation,
/// relation realization) order.
class Crawler {
 public:
  using WarningSink = std::function<void(const std::string&)>;

  Crawler(LanguageModel& lm, PromptSet prompts, CrawlConfig config,
          WarningSink warn = {});

  std::vector<std::string> paraphrase_subject(const EntityName& e);
  std::vector<RelationName> generate_relations(
      const std::vector<std::string>& subject_realizations);
  std::vector<std::string> paraphrase_relation(const RelationName& r);
  RelationExpansion generate_objects(
      const EntityName& e, const RelationName& r,
      const std::vector<std::string>& subject_realizations,
      const std::vector<std::string>& relation_realizations);

  ExpansionRecord expand_entity(const EntityName& e, int depth = 1);

  /// Breadth-first crawl up to config.max_depth, then near-duplicate removal.
  /// With a checkpoint, recorded expansions are replayed instead of queried
  /// and new ones are appended as they complete.
  CrawlResult run(const EntityName& seed, CrawlCheckpoint* checkpoint = nullptr);
  KnowledgeGraph crawl(const EntityName& seed,
                       CrawlCheckpoint* checkpoint = nullptr) {
    return run(seed, checkpoint).graph;
  }

  const CrawlConfig& config() const noexcept { return config_; }

 private:
  void warn(const std::string& msg) const;

  LanguageModel& lm_;
  PromptSet prompts_;
  CrawlConfig config_;
  WarningSink warn_;
  mutable std::mutex warn_mu_;
};

/// Numbers, years and simple dates ("1961", "4 August 1961",
/// "August 4, 1961", "1961-08-04").
bool looks_like_literal(std::string_view text);

}  // namespace kgcrawl
