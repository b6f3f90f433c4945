// Copyright 2026 The kgcrawl Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <chrono>
#include <functional>
#include <future>
#include <mutex>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

namespace kgcrawl {

inline constexpr int kListMaxTokens = 256;
inline constexpr int kParaphraseMaxTokens = 64;
inline constexpr double kSamplingTemperature = 0.8;
inline constexpr int kSamplingCount = 3;

/// Completions stop at a blank line or at the start of the next Q/A block.
std::vector<std::string> default_stop_sequences();

struct CompletionRequest {
  std::string prompt;
  double temperature = 0.0;
  int n_samples = 1;
  int max_tokens = kListMaxTokens;
  std::vector<std::string> stop = default_stop_sequences();

  static CompletionRequest greedy(std::string prompt,
                                  int max_tokens = kListMaxTokens);
  static CompletionRequest sampling(std::string prompt,
                                    int max_tokens = kListMaxTokens,
                                    int n_samples = kSamplingCount,
                                    double temperature = kSamplingTemperature);

  bool is_greedy() const noexcept {
    return temperature == 0.0 && n_samples == 1;
  }
  /// Throws std::invalid_argument on negative temperature or counts < 1.
  void validate() const;

  friend bool operator==(const CompletionRequest&,
                         const CompletionRequest&) = default;
};

struct CompletionResponse {
  std::vector<std::string> texts;

  friend bool operator==(const CompletionResponse&,
                         const CompletionResponse&) = default;
};

/// Hex SHA-256 over a canonical serialization of every request field.
std::string request_digest(const CompletionRequest& req);

class BackendError : public std::runtime_error {
 public:
  enum class Kind { kNetwork, kRateLimit, kMalformed, kUnknownPrompt, kConfig };

  BackendError(Kind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  Kind kind() const noexcept { return kind_; }
  bool retryable() const noexcept {
    return kind_ == Kind::kNetwork || kind_ == Kind::kRateLimit;
  }

 private:
  Kind kind_;
};

/// Any text-completion model. Implementations must allow concurrent calls.
class LanguageModel {
 public:
  virtual ~LanguageModel() = default;
  virtual CompletionResponse complete(const CompletionRequest& req) = 0;
};

struct RetryPolicy {
  int max_retries = 5;
  std::chrono::milliseconds initial_delay{500};
  std::chrono::milliseconds max_delay{30000};
  double multiplier = 2.0;

  /// Delay before retry number `attempt` (1-based), capped at max_delay.
  std::chrono::milliseconds delay_for(int attempt) const;
};

/// Retries network and rate-limit failures with capped exponential backoff.
/// Malformed responses and configuration errors are surfaced immediately.
class RetryingBackend : public LanguageModel {
 public:
  using Sleeper = std::function<void(std::chrono::milliseconds)>;

  RetryingBackend(LanguageModel& inner, RetryPolicy policy = {},
                  Sleeper sleeper = {});

  CompletionResponse complete(const CompletionRequest& req) override;

 private:
  LanguageModel& inner_;
  RetryPolicy policy_;
  Sleeper sleeper_;
};

class ResponseCache;

/// Cache-first wrapper. Hits never reach the inner model; misses are stored
/// before returning. Concurrent identical requests share one inner call.
class CachingBackend : public LanguageModel {
 public:
  CachingBackend(LanguageModel& inner, ResponseCache& cache);

  CompletionResponse complete(const CompletionRequest& req) override;

 private:
  LanguageModel& inner_;
  ResponseCache& cache_;
  std::mutex mu_;
  std::unordered_map<std::string, std::shared_future<CompletionResponse>>
      in_flight_;
};

}  // namespace kgcrawl
