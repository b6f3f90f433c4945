// Copyright 2026 The kgcrawl Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include "kgcrawl/kb_core.hpp"

namespace kgcrawl {

/// Transport-level failure; the affected triplet is excluded from precision.
class ProviderError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A strict fixture corpus was asked for a query it does not hold. This is a
/// setup error and aborts evaluation.
class UnknownQueryError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class SnippetProvider {
 public:
  virtual ~SnippetProvider() = default;
  /// Raw result text for `query`; may contain HTML and URLs.
  virtual std::string fetch(const std::string& query) = 0;
};

/// Offline corpus of JSON-lines {"query": ..., "snippet": ...} records.
class FixtureSnippetProvider : public SnippetProvider {
 public:
  explicit FixtureSnippetProvider(bool strict = true) : strict_(strict) {}
  static FixtureSnippetProvider load(const std::filesystem::path& path,
                                     bool strict = true);

  /// Throws std::invalid_argument if `query` is already present.
  void add(std::string query, std::string snippet);
  std::string fetch(const std::string& query) override;

  std::size_t size() const noexcept { return corpus_.size(); }

 private:
  bool strict_;
  std::unordered_map<std::string, std::string> corpus_;
};

/// GET <endpoint>?q=<query>; the response body is the snippet.
class HttpSnippetProvider : public SnippetProvider {
 public:
  explicit HttpSnippetProvider(std::string endpoint, int timeout_seconds = 30);
  std::string fetch(const std::string& query) override;

 private:
  std::string base_;
  std::string path_;
  int timeout_seconds_;
};

inline constexpr std::size_t kWindowWords = 40;

/// Drops <...> tags and URL words (scheme:// or www. prefixed), then keeps the
/// first `n_words` whitespace-separated words joined by single spaces.
std::string extract_window(std::string_view raw, std::size_t n_words = kWindowWords);

/// Lowercased words with leading and trailing punctuation removed; words that
/// are pure punctuation are dropped. Used on both sides of containment.
std::vector<std::string> match_tokens(std::string_view text);

/// True iff match_tokens(object) occurs contiguously in match_tokens(window).
bool window_contains(std::string_view window, std::string_view object);

enum class VerdictStatus { kVerified, kUnverified, kProviderError };

std::string_view to_string(VerdictStatus s);

struct Verdict {
  Triplet triplet;
  VerdictStatus status;
  std::string matched_window;
  std::string error;
};

/// Query used for a triplet: "<subject> <relation>".
std::string verification_query(const Triplet& t);

Verdict verify_fact(const Triplet& t, SnippetProvider& provider,
                    std::size_t n_words = kWindowWords);

struct PrecisionTally {
  std::size_t verified = 0;
  std::size_t unverified = 0;
  std::size_t provider_errors = 0;

  /// Verified / (Verified + Unverified); empty when the denominator is 0.
  std::optional<double> precision() const;
  std::size_t facts_count() const noexcept { return verified; }
};

struct EvaluationReport {
  std::string seed;
  std::vector<Verdict> verdicts;
  PrecisionTally overall;
  std::map<int, PrecisionTally> by_depth;

  std::optional<double> precision() const { return overall.precision(); }
  std::size_t facts_count() const noexcept { return overall.facts_count(); }
};

struct EvaluateOptions {
  std::size_t n_words = kWindowWords;
  std::size_t max_in_flight = 4;
};

EvaluationReport evaluate_graph(const KnowledgeGraph& g,
                                SnippetProvider& provider,
                                const EvaluateOptions& options = {});

/// Per-triplet verdicts plus aggregates; undefined precision is null.
std::string report_to_json(const EvaluationReport& report);

/// Aggregates only (seed, precision, facts_count, counts, per-depth); the
/// verdict list is not restored.
EvaluationReport report_summary_from_json(const std::string& json);

/// Two-pass Pearson product-moment coefficient. Throws std::invalid_argument
/// on length mismatch, fewer than 2 points, or zero variance.
double pearson_correlation(std::span<const double> xs,
                           std::span<const double> ys);

struct CorrelationRow {
  std::string seed;
  std::size_t facts_count = 0;
  std::size_t reference_count = 0;
};

/// "seed,facts_count,reference_count" header plus one row per seed.
void write_correlation_csv(const std::vector<CorrelationRow>& rows,
                           std::ostream& out);

}  // namespace kgcrawl
