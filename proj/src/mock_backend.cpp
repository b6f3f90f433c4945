// Copyright 2026 The kgcrawl Authors
// SPDX-License-Identifier: Apache-2.0

#include "kgcrawl/mock_backend.hpp"

#include <fstream>
#include <stdexcept>

#include <json.hpp>

namespace kgcrawl {

PromptMatcher PromptMatcher::exact(std::string prompt) {
  return {Kind::kExact, std::move(prompt)};
}
PromptMatcher PromptMatcher::prefix(std::string prefix) {
  return {Kind::kPrefix, std::move(prefix)};
}
PromptMatcher PromptMatcher::suffix(std::string suffix) {
  return {Kind::kSuffix, std::move(suffix)};
}
PromptMatcher PromptMatcher::query(const std::string& query) {
  return suffix("Q: " + query + "\nA:");
}

bool PromptMatcher::matches(const std::string& prompt) const {
  switch (kind) {
    case Kind::kExact:
      return prompt == pattern;
    case Kind::kPrefix:
      return prompt.starts_with(pattern);
    case Kind::kSuffix:
      return prompt.ends_with(pattern);
  }
  return false;
}

void MockBackend::register_fixture(PromptMatcher matcher,
                                   std::vector<std::string> texts) {
  if (texts.empty()) {
    throw std::invalid_argument("mock fixture needs at least one completion");
  }
  for (const auto& f : fixtures_) {
    if (f.matcher == matcher) {
      throw std::invalid_argument("duplicate mock fixture for pattern \"" +
                                  matcher.pattern + "\"");
    }
  }
  fixtures_.push_back({std::move(matcher), std::move(texts)});
}

void MockBackend::load_script(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("mock script not found: " + path.string());
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    try {
      auto j = nlohmann::json::parse(line);
      auto kind = j.at("match").get<std::string>();
      auto pattern = j.at("pattern").get<std::string>();
      auto texts = j.at("texts").get<std::vector<std::string>>();
      PromptMatcher m;
      if (kind == "exact") {
        m = PromptMatcher::exact(pattern);
      } else if (kind == "prefix") {
        m = PromptMatcher::prefix(pattern);
      } else if (kind == "suffix") {
        m = PromptMatcher::suffix(pattern);
      } else if (kind == "query") {
        m = PromptMatcher::query(pattern);
      } else {
        throw std::invalid_argument("unknown match kind \"" + kind + "\"");
      }
      register_fixture(std::move(m), std::move(texts));
    } catch (const std::exception& e) {
      throw std::runtime_error(path.string() + ":" + std::to_string(line_no) +
                               ": " + e.what());
    }
  }
}

const MockBackend::Fixture* MockBackend::find(const std::string& prompt) const {
  const Fixture* best = nullptr;
  for (const auto& f : fixtures_) {
    if (!f.matcher.matches(prompt)) continue;
    if (f.matcher.kind == PromptMatcher::Kind::kExact) return &f;
    if (!best || f.matcher.pattern.size() > best->matcher.pattern.size()) {
      best = &f;
    }
  }
  return best;
}

CompletionResponse MockBackend::complete(const CompletionRequest& req) {
  req.validate();
  {
    std::lock_guard lock(mu_);
    log_.push_back(req);
  }
  CompletionResponse resp;
  const auto n = static_cast<std::size_t>(req.n_samples);
  if (const auto* f = find(req.prompt)) {
    for (std::size_t i = 0; i < n; ++i) {
      resp.texts.push_back(f->texts[i % f->texts.size()]);
    }
    return resp;
  }
  if (strict_) {
    throw BackendError(BackendError::Kind::kUnknownPrompt,
                       "mock backend has no fixture for prompt digest " +
                           request_digest(req));
  }
  resp.texts.assign(n, "");
  return resp;
}

std::size_t MockBackend::calls() const {
  std::lock_guard lock(mu_);
  return log_.size();
}

std::vector<CompletionRequest> MockBackend::requests() const {
  std::lock_guard lock(mu_);
  return log_;
}

}  // namespace kgcrawl
