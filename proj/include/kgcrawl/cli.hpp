// Copyright 2026 The kgcrawl Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "kgcrawl/crawler.hpp"
#include "kgcrawl/lm_backend.hpp"
#include "kgcrawl/response_cache.hpp"

namespace kgcrawl::cli {

struct BackendSettings {
  std::string kind = "mock";  // "mock" | "http"
  std::string endpoint;
  std::string model;
  std::filesystem::path mock_script;
  bool mock_strict = false;
  int timeout_seconds = 60;
  int max_retries = 5;
};

struct PromptPaths {
  std::filesystem::path relation_generation;
  std::filesystem::path pure_object_generation;
  std::filesystem::path dk_object_generation;

  /// The three default file names under `dir`.
  static PromptPaths in_dir(const std::filesystem::path& dir);
};

/// Everything a command needs. Loaded from a JSON config file, then
/// overridden field by field by command-line flags. Credentials are never
/// part of it; the HTTP backend reads KGCRAWL_API_KEY.
struct AppConfig {
  BackendSettings backend;
  PromptPaths prompts = PromptPaths::in_dir(KGCRAWL_DEFAULT_PROMPT_DIR);
  std::filesystem::path reference_kb;
  CrawlConfig crawl;
  std::optional<std::filesystem::path> cache_path;
  std::filesystem::path out_dir = "kgcrawl-out";
  std::uint64_t rng_seed = 0;
  std::size_t k_dk = 10;

  static AppConfig from_json_file(const std::filesystem::path& path);
  /// Applies the fields present in `json` on top of this config.
  void merge_json(const std::string& json);
  std::string to_json() const;
};

/// A constructed backend chain: mock or HTTP (with retries), optionally
/// behind the response cache.
class BackendStack {
 public:
  explicit BackendStack(const AppConfig& config);
  LanguageModel& model() noexcept { return *top_; }

 private:
  std::unique_ptr<LanguageModel> base_;
  std::unique_ptr<LanguageModel> retrying_;
  std::unique_ptr<ResponseCache> cache_;
  std::unique_ptr<LanguageModel> caching_;
  LanguageModel* top_ = nullptr;
};

/// Entry point shared by the kgcrawl binary and the tests. Returns the
/// process exit status: 0 success, 1 runtime failure, 2 usage or
/// configuration error.
int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err);

}  // namespace kgcrawl::cli
