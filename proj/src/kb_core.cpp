// Copyright 2026 The kgcrawl Authors
// SPDX-License-Identifier: Apache-2.0

#include "kgcrawl/kb_core.hpp"

#include <algorithm>
#include <cctype>
#include <stdexcept>

#include "kgcrawl/text_util.hpp"

namespace kgcrawl {

std::string normalize(std::string_view text) {
  std::string out;
  out.reserve(text.size());
  bool pending_space = false;
  for (char c : text) {
    auto uc = static_cast<unsigned char>(c);
    if (std::isspace(uc)) {
      pending_space = !out.empty();
      continue;
    }
    if (pending_space) {
      out.push_back(' ');
      pending_space = false;
    }
    out.push_back(static_cast<char>(std::tolower(uc)));
  }
  while (!out.empty() &&
         (out.back() == '.' || out.back() == ',' || out.back() == ' ')) {
    out.pop_back();
  }
  return out;
}

std::vector<std::string> tokenize(std::string_view text) {
  std::vector<std::string> tokens;
  for (auto& tok : split_whitespace(normalize(text))) {
    if (tok != "#") tokens.push_back(std::move(tok));
  }
  return tokens;
}

double token_f1(std::string_view a, std::string_view b) {
  auto ta = tokenize(a);
  auto tb = tokenize(b);
  if (ta.empty() && tb.empty()) return 1.0;
  if (ta.empty() || tb.empty()) return 0.0;
  std::sort(ta.begin(), ta.end());
  std::sort(tb.begin(), tb.end());
  std::vector<std::string> common;
  std::set_intersection(ta.begin(), ta.end(), tb.begin(), tb.end(),
                        std::back_inserter(common));
  return 2.0 * static_cast<double>(common.size()) /
         static_cast<double>(ta.size() + tb.size());
}

bool is_valid_name(std::string_view text) {
  auto trimmed = trim(text);
  if (normalize(trimmed).empty()) return false;
  return std::none_of(trimmed.begin(), trimmed.end(), [](char c) {
    auto uc = static_cast<unsigned char>(c);
    return c == '#' || uc < 0x20 || uc == 0x7f;
  });
}

namespace detail {

template <typename Tag>
Name<Tag>::Name(std::string_view text) : text_(trim(text)) {
  if (!is_valid_name(text_)) {
    throw std::invalid_argument("invalid name: \"" + std::string(text) + "\"");
  }
}

template class Name<EntityTag>;
template class Name<RelationTag>;

}  // namespace detail

Triplet::Triplet(EntityName subject, RelationName relation, EntityName object,
                 int depth, std::vector<Realization> provenance)
    : subject_(std::move(subject)),
      relation_(std::move(relation)),
      object_(std::move(object)),
      depth_(depth) {
  if (depth_ < 1) throw std::invalid_argument("triplet depth must be >= 1");
  merge_provenance(provenance);
  if (provenance_.empty()) {
    throw std::invalid_argument("triplet needs at least one realization");
  }
}

void Triplet::merge_provenance(const std::vector<Realization>& other) {
  for (const auto& r : other) {
    if (std::find(provenance_.begin(), provenance_.end(), r) ==
        provenance_.end()) {
      provenance_.push_back(r);
    }
  }
}

std::string fact_key(const Triplet& t) {
  return t.subject().key() + " # " + t.relation().key() + " # " +
         t.object().key();
}

std::vector<Triplet> dedup_facts(std::vector<Triplet> facts, double threshold) {
  if (!(threshold > 0.0 && threshold <= 1.0)) {
    throw std::invalid_argument("dedup threshold must be in (0, 1]");
  }
  std::vector<Triplet> kept;
  std::vector<std::string> kept_keys;
  for (auto& fact : facts) {
    auto key = fact_key(fact);
    auto hit = std::find_if(kept_keys.begin(), kept_keys.end(),
                            [&](const std::string& k) {
                              return token_f1(key, k) > threshold;
                            });
    if (hit == kept_keys.end()) {
      kept.push_back(std::move(fact));
      kept_keys.push_back(std::move(key));
    } else {
      kept[static_cast<std::size_t>(hit - kept_keys.begin())].merge_provenance(
          fact.provenance());
    }
  }
  return kept;
}

KnowledgeGraph::KnowledgeGraph(EntityName seed) : seed_(std::move(seed)) {
  add_entity(seed_);
}

KnowledgeGraph KnowledgeGraph::from_triplets(EntityName seed,
                                             std::vector<Triplet> triplets) {
  KnowledgeGraph g(std::move(seed));
  for (auto& t : triplets) g.insert(std::move(t));
  return g;
}

bool KnowledgeGraph::insert(Triplet t) {
  auto key = fact_key(t);
  if (auto it = fact_index_.find(key); it != fact_index_.end()) {
    triplets_[it->second].merge_provenance(t.provenance());
    return false;
  }
  add_entity(t.subject());
  add_relation(t.relation());
  add_entity(t.object());
  fact_index_.emplace(std::move(key), triplets_.size());
  triplets_.push_back(std::move(t));
  return true;
}

bool KnowledgeGraph::contains_entity(std::string_view text) const {
  return entity_index_.contains(normalize(text));
}

bool KnowledgeGraph::contains_relation(std::string_view text) const {
  return relation_index_.contains(normalize(text));
}

std::optional<std::size_t> KnowledgeGraph::entity_index(
    std::string_view text) const {
  if (auto it = entity_index_.find(normalize(text)); it != entity_index_.end()) {
    return it->second;
  }
  return std::nullopt;
}

void KnowledgeGraph::add_entity(const EntityName& e) {
  if (entity_index_.emplace(e.key(), entities_.size()).second) {
    entities_.push_back(e);
  }
}

void KnowledgeGraph::add_relation(const RelationName& r) {
  if (relation_index_.emplace(r.key(), relations_.size()).second) {
    relations_.push_back(r);
  }
}

}  // namespace kgcrawl
