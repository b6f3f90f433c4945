// Copyright 2026 The kgcrawl Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <filesystem>
#include <fstream>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "kgcrawl/crawler.hpp"

namespace kgcrawl {

std::string expansion_to_json_line(const ExpansionRecord& rec);
ExpansionRecord expansion_from_json_line(const std::string& line);

/// Append-only JSON-lines log of completed expansions, keyed by normalized
/// entity. Records already in the file are loaded on construction; a torn
/// final line is ignored.
class CrawlCheckpoint {
 public:
  explicit CrawlCheckpoint(std::filesystem::path path);

  const ExpansionRecord* find(std::string_view entity) const;
  void append(const ExpansionRecord& rec);

  std::size_t size() const noexcept { return records_.size(); }
  const std::filesystem::path& path() const noexcept { return path_; }

 private:
  std::filesystem::path path_;
  std::ofstream out_;
  std::vector<ExpansionRecord> records_;
  std::unordered_map<std::string, std::size_t> index_;
};

}  // namespace kgcrawl
