// Copyright 2026 The kgcrawl Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <string>

#include "kgcrawl/lm_backend.hpp"

namespace kgcrawl {

inline constexpr const char* kApiKeyEnv = "KGCRAWL_API_KEY";

struct HttpBackendConfig {
  /// Full URL of a completions endpoint, e.g.
  /// https://api.openai.com/v1/completions
  std::string endpoint;
  std::string model;
  int timeout_seconds = 60;
};

/// JSON body sent to the endpoint: model, prompt, temperature, n, max_tokens,
/// stop.
std::string build_completion_body(const std::string& model,
                                  const CompletionRequest& req);

/// Reads choices[].text ordered by choices[].index. Throws
/// BackendError(kMalformed) with a payload excerpt when the body is not
/// usable or holds the wrong number of choices.
CompletionResponse parse_completion_body(const std::string& body,
                                         int expected_samples);

/// Completions over HTTP(S). The bearer token is read from KGCRAWL_API_KEY at
/// construction. HTTP 429 maps to kRateLimit, transport failures and 5xx to
/// kNetwork, other 4xx to kConfig.
class HttpBackend : public LanguageModel {
 public:
  explicit HttpBackend(HttpBackendConfig config);
  HttpBackend(HttpBackendConfig config, std::string api_key);

  CompletionResponse complete(const CompletionRequest& req) override;

 private:
  HttpBackendConfig config_;
  std::string api_key_;
  std::string base_;  // scheme://host[:port]
  std::string path_;
};

}  // namespace kgcrawl
