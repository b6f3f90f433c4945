// Copyright 2026 The kgcrawl Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <array>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "kgcrawl/kb_core.hpp"
#include "kgcrawl/reference_kb.hpp"

namespace kgcrawl {

enum class SubTask {
  kRelationGeneration,
  kPureObjectGeneration,
  kDkObjectGeneration,
  kSubjectParaphrasing,
  kRelationParaphrasing,
};

std::string_view to_string(SubTask task);

inline constexpr std::string_view kDontKnow = "Don't know";

/// Either an abstention or a non-empty list of distinct objects.
class ObjectAnswer {
 public:
  static ObjectAnswer dont_know() { return ObjectAnswer({}); }
  /// An empty list yields dont_know().
  static ObjectAnswer objects(std::vector<EntityName> objects);

  bool is_dont_know() const noexcept { return objects_.empty(); }
  const std::vector<EntityName>& objects() const noexcept { return objects_; }

  friend bool operator==(const ObjectAnswer&, const ObjectAnswer&) = default;

 private:
  explicit ObjectAnswer(std::vector<EntityName> objects)
      : objects_(std::move(objects)) {}

  std::vector<EntityName> objects_;
};

/// "Q: <query>\nA: <answer>" per example, blank line between blocks, then
/// "Q: <query>\nA:" for the target query. Throws std::invalid_argument on an
/// empty example list or query.
std::string build_qa_prompt(const std::vector<InContextExample>& examples,
                            std::string_view query);

/// Object-generation query string, "subject # relation".
std::string object_query(std::string_view subject, std::string_view relation);

std::string build_subject_paraphrase_prompt(const EntityName& subject);

std::array<std::string, 3> build_relation_paraphrase_prompts(
    const RelationName& relation);

/// First line of `text`, split on '#', trimmed, empties and normalized
/// duplicates dropped.
std::vector<std::string> parse_list_answer(std::string_view text);

/// True for "Don't know" and its apostrophe/punctuation variants.
bool is_dont_know(std::string_view segment);

/// Any "Don't know" segment, or a blank completion, abstains.
ObjectAnswer parse_object_answer(std::string_view text);

/// First line, trimmed and unquoted. Rejected when empty, when it contains
/// '#' or control characters, or when it normalizes equal to `original`.
std::optional<std::string> parse_paraphrase_answer(std::string_view text,
                                                   std::string_view original);

}  // namespace kgcrawl
