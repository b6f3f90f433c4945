// Copyright 2026 The kgcrawl Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

namespace kgcrawl {

/// Lowercases, collapses whitespace runs to one space, trims, and drops any
/// trailing '.' or ',' characters. This is the identity used for voting,
/// deduplication and graph membership.
std::string normalize(std::string_view text);

/// Tokens of normalize(text) split on spaces; bare "#" tokens are dropped.
std::vector<std::string> tokenize(std::string_view text);

/// Token-level F1 over multisets of tokens. Two empty inputs score 1.0.
double token_f1(std::string_view a, std::string_view b);

/// Returns true if `text` is acceptable as an entity or relation name:
/// non-empty after trimming, no '#', no control characters.
bool is_valid_name(std::string_view text);

namespace detail {

template <typename Tag>
class Name {
 public:
  /// Trims `text` and validates it; throws std::invalid_argument otherwise.
  explicit Name(std::string_view text);

  const std::string& text() const noexcept { return text_; }
  std::string key() const { return normalize(text_); }

  friend bool operator==(const Name& a, const Name& b) = default;

 private:
  std::string text_;
};

struct EntityTag {};
struct RelationTag {};

}  // namespace detail

using EntityName = detail::Name<detail::EntityTag>;
using RelationName = detail::Name<detail::RelationTag>;

/// One (subject-realization, relation-realization) pair that produced a fact.
struct Realization {
  std::string subject;
  std::string relation;

  friend bool operator==(const Realization&, const Realization&) = default;
};

class Triplet {
 public:
  Triplet(EntityName subject, RelationName relation, EntityName object,
          int depth, std::vector<Realization> provenance);

  const EntityName& subject() const noexcept { return subject_; }
  const RelationName& relation() const noexcept { return relation_; }
  const EntityName& object() const noexcept { return object_; }
  int depth() const noexcept { return depth_; }
  const std::vector<Realization>& provenance() const noexcept {
    return provenance_;
  }
  /// Number of distinct realizations that produced this fact.
  std::size_t votes() const noexcept { return provenance_.size(); }

  /// Adds realizations not already present, preserving order.
  void merge_provenance(const std::vector<Realization>& other);

  friend bool operator==(const Triplet&, const Triplet&) = default;

 private:
  EntityName subject_;
  RelationName relation_;
  EntityName object_;
  int depth_;
  std::vector<Realization> provenance_;
};

/// "subject # relation # object", each part normalized.
std::string fact_key(const Triplet& t);

inline constexpr double kDefaultDedupThreshold = 0.85;

/// Single pass in input order. A fact survives iff its fact_key F1 against
/// every already-kept fact is <= threshold. A dropped fact's provenance is
/// merged into the first kept fact it collided with.
std::vector<Triplet> dedup_facts(std::vector<Triplet> facts,
                                 double threshold = kDefaultDedupThreshold);

/// Seed plus insertion-ordered triplets. Entities and relations are indexed
/// by normalized text; the first surface form seen wins.
class KnowledgeGraph {
 public:
  explicit KnowledgeGraph(EntityName seed);

  /// Builds a graph from scratch; exact duplicates are merged.
  static KnowledgeGraph from_triplets(EntityName seed,
                                      std::vector<Triplet> triplets);

  /// Appends `t`, or merges its provenance into an existing triplet with the
  /// same fact_key. Returns true when a new triplet was appended.
  bool insert(Triplet t);

  const EntityName& seed() const noexcept { return seed_; }
  const std::vector<Triplet>& triplets() const noexcept { return triplets_; }
  const std::vector<EntityName>& entities() const noexcept { return entities_; }
  const std::vector<RelationName>& relations() const noexcept {
    return relations_;
  }

  bool contains_entity(std::string_view text) const;
  bool contains_relation(std::string_view text) const;
  /// Position of the entity in entities(), if present.
  std::optional<std::size_t> entity_index(std::string_view text) const;

  std::size_t size() const noexcept { return triplets_.size(); }
  bool empty() const noexcept { return triplets_.empty(); }

  friend bool operator==(const KnowledgeGraph& a, const KnowledgeGraph& b) {
    return a.seed_ == b.seed_ && a.triplets_ == b.triplets_;
  }

 private:
  void add_entity(const EntityName& e);
  void add_relation(const RelationName& r);

  EntityName seed_;
  std::vector<Triplet> triplets_;
  std::vector<EntityName> entities_;
  std::vector<RelationName> relations_;
  std::unordered_map<std::string, std::size_t> entity_index_;
  std::unordered_map<std::string, std::size_t> relation_index_;
  std::unordered_map<std::string, std::size_t> fact_index_;
};

}  // namespace kgcrawl
