// Copyright 2026 The kgcrawl Authors
// SPDX-License-Identifier: Apache-2.0

#include "kgcrawl/prompting.hpp"

#include <algorithm>
#include <stdexcept>
#include <unordered_set>

#include "kgcrawl/text_util.hpp"

namespace kgcrawl {

std::string_view to_string(SubTask task) {
  switch (task) {
    case SubTask::kRelationGeneration:
      return "relation_generation";
    case SubTask::kPureObjectGeneration:
      return "pure_object_generation";
    case SubTask::kDkObjectGeneration:
      return "dk_object_generation";
    case SubTask::kSubjectParaphrasing:
      return "subject_paraphrasing";
    case SubTask::kRelationParaphrasing:
      return "relation_paraphrasing";
  }
  return "unknown";
}

ObjectAnswer ObjectAnswer::objects(std::vector<EntityName> objects) {
  std::vector<EntityName> unique;
  std::unordered_set<std::string> seen;
  for (auto& o : objects) {
    if (seen.insert(o.key()).second) unique.push_back(std::move(o));
  }
  return ObjectAnswer(std::move(unique));
}

std::string build_qa_prompt(const std::vector<InContextExample>& examples,
                            std::string_view query) {
  if (examples.empty()) throw std::invalid_argument("no in-context examples");
  if (trim(query).empty()) throw std::invalid_argument("empty query");
  std::string prompt;
  for (const auto& ex : examples) {
    prompt += "Q: " + ex.query() + "\nA: " + ex.answer() + "\n\n";
  }
  prompt += "Q: ";
  prompt += query;
  prompt += "\nA:";
  return prompt;
}

std::string object_query(std::string_view subject, std::string_view relation) {
  std::string q(subject);
  q += " # ";
  q += relation;
  return q;
}

std::string build_subject_paraphrase_prompt(const EntityName& subject) {
  return subject.text() + " is also known as:";
}

std::array<std::string, 3> build_relation_paraphrase_prompts(
    const RelationName& relation) {
  const auto& r = relation.text();
  return {"'" + r + "' may be described as", "'" + r + "' refers to",
          "please describe '" + r + "' in a few words:"};
}

namespace {

std::string_view answer_line(std::string_view text) {
  auto start = text.find_first_not_of(" \t\r\n");
  if (start == std::string_view::npos) return {};
  auto line = first_line(text.substr(start));
  if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
  return line;
}

// Folds typographic apostrophes (U+2018, U+2019) and backticks to '\''.
std::string fold_apostrophes(std::string_view s) {
  std::string out;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s.compare(i, 3, "\xE2\x80\x99") == 0 ||
        s.compare(i, 3, "\xE2\x80\x98") == 0) {
      out.push_back('\'');
      i += 2;
    } else if (s[i] == '`') {
      out.push_back('\'');
    } else {
      out.push_back(s[i]);
    }
  }
  return out;
}

}  // namespace

std::vector<std::string> parse_list_answer(std::string_view text) {
  std::vector<std::string> out;
  std::unordered_set<std::string> seen;
  auto line = answer_line(text);
  std::size_t pos = 0;
  while (pos <= line.size()) {
    auto hash = line.find('#', pos);
    auto end = hash == std::string_view::npos ? line.size() : hash;
    auto segment = trim(line.substr(pos, end - pos));
    if (!segment.empty()) {
      auto key = normalize(segment);
      if (!key.empty() && seen.insert(key).second) {
        out.push_back(std::move(segment));
      }
    }
    if (hash == std::string_view::npos) break;
    pos = hash + 1;
  }
  return out;
}

bool is_dont_know(std::string_view segment) {
  auto s = normalize(fold_apostrophes(segment));
  while (!s.empty() && (s.back() == '!' || s.back() == '.' || s.back() == ',' ||
                        s.back() == ' ')) {
    s.pop_back();
  }
  return s == "don't know" || s == "dont know" || s == "i don't know";
}

ObjectAnswer parse_object_answer(std::string_view text) {
  auto segments = parse_list_answer(text);
  if (std::any_of(segments.begin(), segments.end(),
                  [](const std::string& s) { return is_dont_know(s); })) {
    return ObjectAnswer::dont_know();
  }
  std::vector<EntityName> objects;
  for (const auto& s : segments) {
    if (is_valid_name(s)) objects.emplace_back(s);
  }
  return ObjectAnswer::objects(std::move(objects));
}

std::optional<std::string> parse_paraphrase_answer(std::string_view text,
                                                   std::string_view original) {
  auto line = trim(answer_line(text));
  static constexpr std::array<std::pair<std::string_view, std::string_view>, 4>
      kQuotes{{{"\"", "\""},
               {"'", "'"},
               {"\xE2\x80\x9C", "\xE2\x80\x9D"},
               {"\xE2\x80\x98", "\xE2\x80\x99"}}};
  for (bool stripped = true; stripped;) {
    stripped = false;
    for (auto [open, close] : kQuotes) {
      if (line.size() < open.size() + close.size() || !line.starts_with(open) ||
          !line.ends_with(close)) {
        continue;
      }
      auto inner = std::string_view(line).substr(
          open.size(), line.size() - open.size() - close.size());
      // "'a' or 'b'" is not a quoted string.
      if (inner.find(open) != std::string_view::npos ||
          inner.find(close) != std::string_view::npos) {
        continue;
      }
      line = trim(inner);
      stripped = true;
    }
  }
  if (!is_valid_name(line)) return std::nullopt;
  if (normalize(line) == normalize(original)) return std::nullopt;
  return line;
}

}  // namespace kgcrawl
