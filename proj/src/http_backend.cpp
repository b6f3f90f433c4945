// Copyright 2026 The kgcrawl Authors
// SPDX-License-Identifier: Apache-2.0

#include "kgcrawl/http_backend.hpp"

#include <algorithm>
#include <cstdlib>

#include <httplib.h>
#include <json.hpp>

namespace kgcrawl {

namespace {

std::string excerpt(const std::string& body) {
  constexpr std::size_t kMax = 200;
  return body.size() <= kMax ? body : body.substr(0, kMax) + "...";
}

}  // namespace

std::string build_completion_body(const std::string& model,
                                  const CompletionRequest& req) {
  nlohmann::ordered_json j;
  j["model"] = model;
  j["prompt"] = req.prompt;
  j["temperature"] = req.temperature;
  j["n"] = req.n_samples;
  j["max_tokens"] = req.max_tokens;
  j["stop"] = req.stop;
  return j.dump();
}

CompletionResponse parse_completion_body(const std::string& body,
                                         int expected_samples) {
  auto malformed = [&](const std::string& why) {
    return BackendError(BackendError::Kind::kMalformed,
                        "malformed completion response (" + why +
                            "): " + excerpt(body));
  };
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(body);
  } catch (const nlohmann::json::exception&) {
    throw malformed("not JSON");
  }
  if (!j.is_object() || !j.contains("choices") || !j["choices"].is_array()) {
    throw malformed("missing choices");
  }
  std::vector<std::pair<std::int64_t, std::string>> choices;
  std::int64_t fallback = 0;
  for (const auto& c : j["choices"]) {
    if (!c.is_object() || !c.contains("text") || !c["text"].is_string()) {
      throw malformed("choice without text");
    }
    auto idx = c.contains("index") && c["index"].is_number_integer()
                   ? c["index"].get<std::int64_t>()
                   : fallback;
    ++fallback;
    choices.emplace_back(idx, c["text"].get<std::string>());
  }
  if (static_cast<int>(choices.size()) != expected_samples) {
    throw malformed("expected " + std::to_string(expected_samples) +
                    " choices, got " + std::to_string(choices.size()));
  }
  std::stable_sort(choices.begin(), choices.end(),
                   [](const auto& a, const auto& b) { return a.first < b.first; });
  CompletionResponse resp;
  for (auto& [_, text] : choices) resp.texts.push_back(std::move(text));
  return resp;
}

HttpBackend::HttpBackend(HttpBackendConfig config)
    : HttpBackend(config, [] {
        const char* key = std::getenv(kApiKeyEnv);
        if (!key || !*key) {
          throw BackendError(BackendError::Kind::kConfig,
                             std::string(kApiKeyEnv) + " is not set");
        }
        return std::string(key);
      }()) {}

HttpBackend::HttpBackend(HttpBackendConfig config, std::string api_key)
    : config_(std::move(config)), api_key_(std::move(api_key)) {
  auto scheme_end = config_.endpoint.find("://");
  if (scheme_end == std::string::npos) {
    throw BackendError(BackendError::Kind::kConfig,
                       "endpoint must include a scheme: " + config_.endpoint);
  }
  auto path_start = config_.endpoint.find('/', scheme_end + 3);
  if (path_start == std::string::npos) {
    base_ = config_.endpoint;
    path_ = "/";
  } else {
    base_ = config_.endpoint.substr(0, path_start);
    path_ = config_.endpoint.substr(path_start);
  }
  if (config_.model.empty()) {
    throw BackendError(BackendError::Kind::kConfig, "model name is empty");
  }
}

CompletionResponse HttpBackend::complete(const CompletionRequest& req) {
  req.validate();
  httplib::Client client(base_);
  client.set_connection_timeout(config_.timeout_seconds, 0);
  client.set_read_timeout(config_.timeout_seconds, 0);
  client.set_write_timeout(config_.timeout_seconds, 0);
  httplib::Headers headers{{"Authorization", "Bearer " + api_key_}};

  auto res = client.Post(path_, headers, build_completion_body(config_.model, req),
                         "application/json");
  if (!res) {
    throw BackendError(BackendError::Kind::kNetwork,
                       "request to " + config_.endpoint +
                           " failed: " + httplib::to_string(res.error()));
  }
  if (res->status == 429) {
    throw BackendError(BackendError::Kind::kRateLimit,
                       "rate limited: " + excerpt(res->body));
  }
  if (res->status >= 500) {
    throw BackendError(BackendError::Kind::kNetwork,
                       "server error " + std::to_string(res->status) + ": " +
                           excerpt(res->body));
  }
  if (res->status != 200) {
    throw BackendError(BackendError::Kind::kConfig,
                       "HTTP " + std::to_string(res->status) + ": " +
                           excerpt(res->body));
  }
  return parse_completion_body(res->body, req.n_samples);
}

}  // namespace kgcrawl
