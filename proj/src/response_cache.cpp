// Copyright 2026 The kgcrawl Authors
// SPDX-License-Identifier: Apache-2.0

#include "kgcrawl/response_cache.hpp"

#include <ctime>

#include <json.hpp>

namespace kgcrawl {

ResponseCache::ResponseCache(std::filesystem::path path) : path_(std::move(path)) {
  if (std::ifstream in(*path_, std::ios::binary); in) {
    std::string line;
    while (std::getline(in, line)) {
      if (line.empty()) continue;
      try {
        auto j = nlohmann::json::parse(line);
        CacheEntry e;
        e.request_digest = j.at("digest").get<std::string>();
        e.response.texts = j.at("texts").get<std::vector<std::string>>();
        e.timestamp = j.value("timestamp", std::int64_t{0});
        entries_[e.request_digest] = std::move(e);
      } catch (const nlohmann::json::exception&) {
        ++skipped_;
      }
    }
  }
  if (path_->has_parent_path()) {
    std::filesystem::create_directories(path_->parent_path());
  }
  out_.open(*path_, std::ios::binary | std::ios::app);
  if (!out_) throw std::runtime_error("cannot open cache file " + path_->string());
}

std::optional<CompletionResponse> ResponseCache::lookup(
    const std::string& digest) const {
  std::lock_guard lock(mu_);
  if (auto it = entries_.find(digest); it != entries_.end()) {
    return it->second.response;
  }
  return std::nullopt;
}

void ResponseCache::store(const CompletionRequest& req,
                          const CompletionResponse& resp) {
  CacheEntry e{request_digest(req), resp, static_cast<std::int64_t>(std::time(nullptr))};
  std::lock_guard lock(mu_);
  if (out_.is_open()) {
    nlohmann::ordered_json j;
    j["digest"] = e.request_digest;
    j["texts"] = resp.texts;
    j["timestamp"] = e.timestamp;
    j["request"] = {{"prompt", req.prompt},
                    {"temperature", req.temperature},
                    {"n_samples", req.n_samples},
                    {"max_tokens", req.max_tokens},
                    {"stop", req.stop}};
    out_ << j.dump() << '\n';
    out_.flush();
  }
  entries_[e.request_digest] = std::move(e);
}

std::size_t ResponseCache::size() const {
  std::lock_guard lock(mu_);
  return entries_.size();
}

}  // namespace kgcrawl
