// Copyright 2026 The kgcrawl Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <filesystem>
#include <mutex>
#include <string>
#include <vector>

#include "kgcrawl/lm_backend.hpp"

namespace kgcrawl {

struct PromptMatcher {
  enum class Kind { kExact, kPrefix, kSuffix };

  Kind kind = Kind::kExact;
  std::string pattern;

  static PromptMatcher exact(std::string prompt);
  static PromptMatcher prefix(std::string prefix);
  static PromptMatcher suffix(std::string suffix);
  /// Matches any Q/A prompt whose final block asks `query`.
  static PromptMatcher query(const std::string& query);

  bool matches(const std::string& prompt) const;

  friend bool operator==(const PromptMatcher&, const PromptMatcher&) = default;
};

/// Replays registered completions. Exact matchers win; otherwise the longest
/// matching prefix/suffix pattern is used, earliest registration breaking
/// ties. Registered texts are cycled to fill n_samples.
///
/// Unmatched prompts throw BackendError(kUnknownPrompt) in strict mode and
/// produce empty completions otherwise.
class MockBackend : public LanguageModel {
 public:
  explicit MockBackend(bool strict = true) : strict_(strict) {}

  /// Throws std::invalid_argument on a duplicate matcher or empty `texts`.
  void register_fixture(PromptMatcher matcher, std::vector<std::string> texts);

  /// Loads JSON-lines records {"match": "exact"|"prefix"|"suffix"|"query",
  /// "pattern": "...", "texts": [...]}.
  void load_script(const std::filesystem::path& path);

  void set_strict(bool strict) { strict_ = strict; }

  CompletionResponse complete(const CompletionRequest& req) override;

  std::size_t calls() const;
  /// Every request seen, in arrival order.
  std::vector<CompletionRequest> requests() const;

 private:
  struct Fixture {
    PromptMatcher matcher;
    std::vector<std::string> texts;
  };

  const Fixture* find(const std::string& prompt) const;

  bool strict_;
  std::vector<Fixture> fixtures_;
  mutable std::mutex mu_;
  std::vector<CompletionRequest> log_;
};

}  // namespace kgcrawl
