// Copyright 2026 The kgcrawl Authors
// SPDX-License-Identifier: Apache-2.0

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "kgcrawl/cli.hpp"
#include "kgcrawl/http_backend.hpp"
#include "kgcrawl/mock_backend.hpp"

namespace kgcrawl::cli {

using json = nlohmann::ordered_json;

PromptPaths PromptPaths::in_dir(const std::filesystem::path& dir) {
  return {dir / "relation_generation.txt", dir / "pure_object_generation.txt",
          dir / "dk_object_generation.txt"};
}

AppConfig AppConfig::from_json_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("config file not found: " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  AppConfig c;
  c.merge_json(ss.str());
  return c;
}

namespace {

template <typename T>
void take(const json& j, const char* key, T& field) {
  if (j.contains(key) && !j[key].is_null()) field = j[key].get<T>();
}

void take_path(const json& j, const char* key, std::filesystem::path& field) {
  if (j.contains(key) && !j[key].is_null()) {
    field = j[key].get<std::string>();
  }
}

}  // namespace

void AppConfig::merge_json(const std::string& text) {
  auto j = json::parse(text);
  if (j.contains("backend")) {
    const auto& b = j["backend"];
    take(b, "kind", backend.kind);
    take(b, "endpoint", backend.endpoint);
    take(b, "model", backend.model);
    take_path(b, "mock_script", backend.mock_script);
    take(b, "mock_strict", backend.mock_strict);
    take(b, "timeout_seconds", backend.timeout_seconds);
    take(b, "max_retries", backend.max_retries);
  }
  if (j.contains("prompts")) {
    const auto& p = j["prompts"];
    if (p.contains("dir")) prompts = PromptPaths::in_dir(p["dir"].get<std::string>());
    take_path(p, "relation_generation", prompts.relation_generation);
    take_path(p, "pure_object_generation", prompts.pure_object_generation);
    take_path(p, "dk_object_generation", prompts.dk_object_generation);
  }
  take_path(j, "reference_kb", reference_kb);
  if (j.contains("crawl")) {
    const auto& c = j["crawl"];
    take(c, "depth", crawl.max_depth);
    if (c.contains("decoding")) {
      auto d = c["decoding"].get<std::string>();
      if (d == "greedy") {
        crawl.decoding = Decoding::greedy();
      } else if (d == "sampling") {
        crawl.decoding = Decoding::sampling();
      } else {
        throw std::invalid_argument("unknown decoding \"" + d + "\"");
      }
    }
    take(c, "n_samples", crawl.decoding.n_samples);
    take(c, "temperature", crawl.decoding.temperature);
    take(c, "dk", crawl.use_dk);
    take(c, "sp", crawl.use_subject_paraphrasing);
    take(c, "rp", crawl.use_relation_paraphrasing);
    take(c, "vote_threshold", crawl.vote_threshold);
    take(c, "dedup_threshold", crawl.dedup_threshold);
    if (c.contains("max_relations") && !c["max_relations"].is_null()) {
      crawl.max_relations_per_entity = c["max_relations"].get<std::size_t>();
    }
    take(c, "votes_from_relation_realizations_only",
         crawl.votes_from_relation_realizations_only);
    take(c, "skip_literal_objects", crawl.skip_literal_objects);
  }
  if (j.contains("cache_path") && !j["cache_path"].is_null()) {
    cache_path = j["cache_path"].get<std::string>();
  }
  take_path(j, "out_dir", out_dir);
  take(j, "max_in_flight", crawl.max_in_flight);
  take(j, "rng_seed", rng_seed);
  take(j, "k_dk", k_dk);
}

std::string AppConfig::to_json() const {
  json j;
  j["backend"] = {{"kind", backend.kind},
                  {"endpoint", backend.endpoint},
                  {"model", backend.model},
                  {"mock_script", backend.mock_script.string()},
                  {"mock_strict", backend.mock_strict},
                  {"timeout_seconds", backend.timeout_seconds},
                  {"max_retries", backend.max_retries}};
  j["prompts"] = {{"relation_generation", prompts.relation_generation.string()},
                  {"pure_object_generation",
                   prompts.pure_object_generation.string()},
                  {"dk_object_generation", prompts.dk_object_generation.string()}};
  j["reference_kb"] = reference_kb.string();
  json c;
  c["depth"] = crawl.max_depth;
  c["decoding"] =
      crawl.decoding.mode == Decoding::Mode::kGreedy ? "greedy" : "sampling";
  c["n_samples"] = crawl.decoding.n_samples;
  c["temperature"] = crawl.decoding.temperature;
  c["dk"] = crawl.use_dk;
  c["sp"] = crawl.use_subject_paraphrasing;
  c["rp"] = crawl.use_relation_paraphrasing;
  c["vote_threshold"] = crawl.vote_threshold;
  c["dedup_threshold"] = crawl.dedup_threshold;
  c["max_relations"] = crawl.max_relations_per_entity
                           ? json(*crawl.max_relations_per_entity)
                           : json();
  c["votes_from_relation_realizations_only"] =
      crawl.votes_from_relation_realizations_only;
  c["skip_literal_objects"] = crawl.skip_literal_objects;
  j["crawl"] = std::move(c);
  j["cache_path"] = cache_path ? json(cache_path->string()) : json();
  j["out_dir"] = out_dir.string();
  j["max_in_flight"] = crawl.max_in_flight;
  j["rng_seed"] = rng_seed;
  j["k_dk"] = k_dk;
  return j.dump(2);
}

BackendStack::BackendStack(const AppConfig& config) {
  if (config.backend.kind == "mock") {
    auto mock = std::make_unique<MockBackend>(config.backend.mock_strict);
    if (!config.backend.mock_script.empty()) {
      mock->load_script(config.backend.mock_script);
    }
    base_ = std::move(mock);
    top_ = base_.get();
  } else if (config.backend.kind == "http") {
    base_ = std::make_unique<HttpBackend>(HttpBackendConfig{
        config.backend.endpoint, config.backend.model,
        config.backend.timeout_seconds});
    RetryPolicy policy;
    policy.max_retries = config.backend.max_retries;
    retrying_ = std::make_unique<RetryingBackend>(*base_, policy);
    top_ = retrying_.get();
  } else {
    throw std::invalid_argument("unknown backend \"" + config.backend.kind +
                                "\" (expected http or mock)");
  }
  if (config.cache_path) {
    cache_ = std::make_unique<ResponseCache>(*config.cache_path);
    caching_ = std::make_unique<CachingBackend>(*top_, *cache_);
    top_ = caching_.get();
  }
}

}  // namespace kgcrawl::cli
