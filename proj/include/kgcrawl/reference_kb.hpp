// Copyright 2026 The kgcrawl Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include "kgcrawl/kb_core.hpp"

namespace kgcrawl {

/// All gold objects for one (subject, relation) pair.
struct ReferenceFact {
  EntityName subject;
  RelationName relation;
  std::vector<EntityName> objects;
};

/// One (query, answer) demonstration. Neither side may be empty or contain a
/// newline.
class InContextExample {
 public:
  InContextExample(std::string query, std::string answer);

  const std::string& query() const noexcept { return query_; }
  const std::string& answer() const noexcept { return answer_; }

  friend bool operator==(const InContextExample&,
                         const InContextExample&) = default;

 private:
  std::string query_;
  std::string answer_;
};

class KbParseError : public std::runtime_error {
 public:
  KbParseError(const std::string& what, std::size_t line)
      : std::runtime_error(what), line_(line) {}
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

class InsufficientDataError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Immutable after load. Subjects and facts keep file order.
class ReferenceKb {
 public:
  ReferenceKb() = default;

  /// Adds one (s, r, o) record, grouping objects by (s, r). Duplicate objects
  /// (after normalization) are ignored.
  void add(const EntityName& s, const RelationName& r, const EntityName& o);

  const std::vector<ReferenceFact>& facts() const noexcept { return facts_; }
  const std::vector<EntityName>& subjects() const noexcept { return subjects_; }

  /// Facts whose subject normalizes to `subject`, in file order.
  std::vector<const ReferenceFact*> facts_for(std::string_view subject) const;
  const ReferenceFact* find(std::string_view subject,
                            std::string_view relation) const;

  /// Number of (relation, object) pairs recorded for the subject.
  std::size_t fact_count(std::string_view subject) const;

  std::size_t malformed_lines() const noexcept { return malformed_.size(); }
  /// 1-based line numbers of records skipped during a lenient load.
  const std::vector<std::size_t>& malformed_line_numbers() const noexcept {
    return malformed_;
  }

  bool empty() const noexcept { return facts_.empty(); }

 private:
  friend ReferenceKb read_reference_kb(std::istream&, bool);

  std::vector<ReferenceFact> facts_;
  std::vector<EntityName> subjects_;
  std::unordered_map<std::string, std::vector<std::size_t>> by_subject_;
  std::unordered_map<std::string, std::size_t> by_pair_;
  std::unordered_map<std::string, std::size_t> counts_;
  std::vector<std::size_t> malformed_;
};

/// Parses subject<TAB>relation<TAB>object lines. Blank lines are skipped. In
/// strict mode the first malformed line throws KbParseError; otherwise it is
/// recorded in malformed_line_numbers().
ReferenceKb read_reference_kb(std::istream& in, bool strict = false);
ReferenceKb load_reference_kb(const std::filesystem::path& path,
                              bool strict = false);

inline constexpr std::size_t kRelationExamples = 7;
inline constexpr std::size_t kObjectExamples = 8;

/// k distinct subjects; answer = the subject's relations joined by " # ".
std::vector<InContextExample> sample_relation_examples(
    const ReferenceKb& kb, std::size_t k = kRelationExamples,
    std::uint64_t rng_seed = 0);

/// k distinct facts; query = "subject # relation", answer = objects joined by
/// " # ".
std::vector<InContextExample> sample_object_examples(
    const ReferenceKb& kb, std::size_t k = kObjectExamples,
    std::uint64_t rng_seed = 0);

// Fixture files hold "Q: <query>\nA: <answer>" records separated by one blank
// line.
std::vector<InContextExample> read_fixed_examples(std::istream& in);
std::vector<InContextExample> load_fixed_examples(
    const std::filesystem::path& path);
std::string format_fixed_examples(const std::vector<InContextExample>& examples);
void save_fixed_examples(const std::vector<InContextExample>& examples,
                         const std::filesystem::path& path);

}  // namespace kgcrawl
