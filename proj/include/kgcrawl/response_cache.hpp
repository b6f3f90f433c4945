// Copyright 2026 The kgcrawl Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <mutex>
#include <optional>
#include <string>
#include <unordered_map>

#include "kgcrawl/lm_backend.hpp"

namespace kgcrawl {

struct CacheEntry {
  std::string request_digest;
  CompletionResponse response;
  std::int64_t timestamp = 0;  // unix seconds
};

/// Digest-keyed completion store backed by an append-only JSON-lines file.
/// Without a path it is memory-only.
class ResponseCache {
 public:
  ResponseCache() = default;
  /// Loads any existing records from `path` and appends new ones to it. A
  /// torn final line (from an interrupted write) is ignored.
  explicit ResponseCache(std::filesystem::path path);

  std::optional<CompletionResponse> lookup(const std::string& digest) const;
  void store(const CompletionRequest& req, const CompletionResponse& resp);

  std::size_t size() const;
  std::size_t skipped_records() const noexcept { return skipped_; }

 private:
  mutable std::mutex mu_;
  std::optional<std::filesystem::path> path_;
  std::ofstream out_;
  std::unordered_map<std::string, CacheEntry> entries_;
  std::size_t skipped_ = 0;
};

}  // namespace kgcrawl
