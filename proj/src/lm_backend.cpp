// Copyright 2026 The kgcrawl Authors
// SPDX-License-Identifier: Apache-2.0

#include "kgcrawl/lm_backend.hpp"

#include <openssl/evp.h>

#include <algorithm>
#include <cmath>
#include <thread>

#include <json.hpp>

#include "kgcrawl/response_cache.hpp"

namespace kgcrawl {

std::vector<std::string> default_stop_sequences() { return {"\n\n", "\nQ:"}; }

CompletionRequest CompletionRequest::greedy(std::string prompt,
                                            int max_tokens) {
  CompletionRequest r;
  r.prompt = std::move(prompt);
  r.max_tokens = max_tokens;
  return r;
}

CompletionRequest CompletionRequest::sampling(std::string prompt,
                                              int max_tokens, int n_samples,
                                              double temperature) {
  CompletionRequest r;
  r.prompt = std::move(prompt);
  r.max_tokens = max_tokens;
  r.n_samples = n_samples;
  r.temperature = temperature;
  return r;
}

void CompletionRequest::validate() const {
  if (!(temperature >= 0.0) || !std::isfinite(temperature)) {
    throw std::invalid_argument("temperature must be >= 0");
  }
  if (n_samples < 1) throw std::invalid_argument("n_samples must be >= 1");
  if (max_tokens < 1) throw std::invalid_argument("max_tokens must be >= 1");
}

std::string request_digest(const CompletionRequest& req) {
  nlohmann::ordered_json j;
  j["prompt"] = req.prompt;
  j["temperature"] = req.temperature;
  j["n_samples"] = req.n_samples;
  j["max_tokens"] = req.max_tokens;
  j["stop"] = req.stop;
  const auto canonical = j.dump();

  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  EVP_Digest(canonical.data(), canonical.size(), md, &len, EVP_sha256(),
             nullptr);
  static constexpr char kHex[] = "0123456789abcdef";
  std::string hex;
  hex.reserve(len * 2);
  for (unsigned int i = 0; i < len; ++i) {
    hex.push_back(kHex[md[i] >> 4]);
    hex.push_back(kHex[md[i] & 0xf]);
  }
  return hex;
}

std::chrono::milliseconds RetryPolicy::delay_for(int attempt) const {
  double ms = static_cast<double>(initial_delay.count()) *
              std::pow(multiplier, std::max(0, attempt - 1));
  ms = std::min(ms, static_cast<double>(max_delay.count()));
  return std::chrono::milliseconds(static_cast<std::int64_t>(ms));
}

RetryingBackend::RetryingBackend(LanguageModel& inner, RetryPolicy policy,
                                 Sleeper sleeper)
    : inner_(inner), policy_(policy), sleeper_(std::move(sleeper)) {
  if (!sleeper_) {
    sleeper_ = [](std::chrono::milliseconds d) { std::this_thread::sleep_for(d); };
  }
}

CompletionResponse RetryingBackend::complete(const CompletionRequest& req) {
  for (int attempt = 0;; ++attempt) {
    try {
      return inner_.complete(req);
    } catch (const BackendError& e) {
      if (!e.retryable() || attempt >= policy_.max_retries) throw;
      sleeper_(policy_.delay_for(attempt + 1));
    }
  }
}

CachingBackend::CachingBackend(LanguageModel& inner, ResponseCache& cache)
    : inner_(inner), cache_(cache) {}

CompletionResponse CachingBackend::complete(const CompletionRequest& req) {
  const auto digest = request_digest(req);
  std::promise<CompletionResponse> promise;
  {
    std::unique_lock lock(mu_);
    if (auto hit = cache_.lookup(digest)) return *hit;
    if (auto it = in_flight_.find(digest); it != in_flight_.end()) {
      auto shared = it->second;
      lock.unlock();
      return shared.get();
    }
    in_flight_.emplace(digest, promise.get_future().share());
  }

  try {
    auto resp = inner_.complete(req);
    cache_.store(req, resp);
    promise.set_value(resp);
    std::lock_guard lock(mu_);
    in_flight_.erase(digest);
    return resp;
  } catch (...) {
    promise.set_exception(std::current_exception());
    std::lock_guard lock(mu_);
    in_flight_.erase(digest);
    throw;
  }
}

}  // namespace kgcrawl
