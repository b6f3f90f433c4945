// Copyright 2026 The kgcrawl Authors
// SPDX-License-Identifier: Apache-2.0

#include "kgcrawl/evaluation.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <ostream>

#include <httplib.h>
#include <json.hpp>

#include "kgcrawl/parallel.hpp"
#include "kgcrawl/text_util.hpp"

namespace kgcrawl {

FixtureSnippetProvider FixtureSnippetProvider::load(
    const std::filesystem::path& path, bool strict) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("snippet corpus not found: " + path.string());
  FixtureSnippetProvider provider(strict);
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    try {
      auto j = nlohmann::json::parse(line);
      provider.add(j.at("query").get<std::string>(),
                   j.at("snippet").get<std::string>());
    } catch (const std::exception& e) {
      throw std::runtime_error(path.string() + ":" + std::to_string(line_no) +
                               ": " + e.what());
    }
  }
  return provider;
}

void FixtureSnippetProvider::add(std::string query, std::string snippet) {
  if (!corpus_.emplace(query, std::move(snippet)).second) {
    throw std::invalid_argument("duplicate corpus query \"" + query + "\"");
  }
}

std::string FixtureSnippetProvider::fetch(const std::string& query) {
  if (auto it = corpus_.find(query); it != corpus_.end()) return it->second;
  if (strict_) {
    throw UnknownQueryError("snippet corpus has no entry for query \"" + query +
                            "\"");
  }
  return {};
}

HttpSnippetProvider::HttpSnippetProvider(std::string endpoint,
                                         int timeout_seconds)
    : timeout_seconds_(timeout_seconds) {
  auto scheme_end = endpoint.find("://");
  if (scheme_end == std::string::npos) {
    throw std::invalid_argument("search endpoint must include a scheme");
  }
  auto path_start = endpoint.find('/', scheme_end + 3);
  base_ = endpoint.substr(0, path_start);
  path_ = path_start == std::string::npos ? "/" : endpoint.substr(path_start);
}

std::string HttpSnippetProvider::fetch(const std::string& query) {
  httplib::Client client(base_);
  client.set_connection_timeout(timeout_seconds_, 0);
  client.set_read_timeout(timeout_seconds_, 0);
  auto res = client.Get(path_, httplib::Params{{"q", query}}, httplib::Headers{});
  if (!res) {
    throw ProviderError("search request failed: " +
                        httplib::to_string(res.error()));
  }
  if (res->status != 200) {
    throw ProviderError("search returned HTTP " + std::to_string(res->status));
  }
  return res->body;
}

namespace {

bool is_url_word(std::string_view word) {
  std::string lower(word);
  std::transform(lower.begin(), lower.end(), lower.begin(),
                 [](unsigned char c) { return std::tolower(c); });
  // Leading brackets/quotes around a link still make it a link.
  auto start = lower.find_first_not_of("([\"'<");
  if (start == std::string::npos) return false;
  std::string_view w(lower);
  w.remove_prefix(start);
  return w.starts_with("www.") || w.find("://") != std::string_view::npos;
}

bool is_punct(char c) { return std::ispunct(static_cast<unsigned char>(c)); }

}  // namespace

std::string extract_window(std::string_view raw, std::size_t n_words) {
  std::string text;
  text.reserve(raw.size());
  for (std::size_t i = 0; i < raw.size(); ++i) {
    if (raw[i] == '<') {
      auto close = raw.find('>', i + 1);
      if (close != std::string_view::npos) {
        text.push_back(' ');
        i = close;
        continue;
      }
    }
    text.push_back(raw[i]);
  }

  std::vector<std::string> kept;
  for (auto& w : split_whitespace(text)) {
    if (kept.size() == n_words) break;
    if (is_url_word(w)) continue;
    kept.push_back(std::move(w));
  }
  return join(kept, " ");
}

std::vector<std::string> match_tokens(std::string_view text) {
  std::vector<std::string> out;
  for (auto& w : split_whitespace(normalize(text))) {
    std::size_t b = 0;
    std::size_t e = w.size();
    while (b < e && is_punct(w[b])) ++b;
    while (e > b && is_punct(w[e - 1])) --e;
    if (e > b) out.push_back(w.substr(b, e - b));
  }
  return out;
}

bool window_contains(std::string_view window, std::string_view object) {
  auto hay = match_tokens(window);
  auto needle = match_tokens(object);
  if (needle.empty()) return false;
  return std::search(hay.begin(), hay.end(), needle.begin(), needle.end()) !=
         hay.end();
}

std::string_view to_string(VerdictStatus s) {
  switch (s) {
    case VerdictStatus::kVerified:
      return "verified";
    case VerdictStatus::kUnverified:
      return "unverified";
    case VerdictStatus::kProviderError:
      return "provider_error";
  }
  return "unknown";
}

std::string verification_query(const Triplet& t) {
  return t.subject().text() + " " + t.relation().text();
}

Verdict verify_fact(const Triplet& t, SnippetProvider& provider,
                    std::size_t n_words) {
  try {
    auto window = extract_window(provider.fetch(verification_query(t)), n_words);
    auto status = window_contains(window, t.object().text())
                      ? VerdictStatus::kVerified
                      : VerdictStatus::kUnverified;
    return {t, status, std::move(window), {}};
  } catch (const ProviderError& e) {
    return {t, VerdictStatus::kProviderError, {}, e.what()};
  }
}

std::optional<double> PrecisionTally::precision() const {
  const auto denom = verified + unverified;
  if (denom == 0) return std::nullopt;
  return static_cast<double>(verified) / static_cast<double>(denom);
}

namespace {

void tally(PrecisionTally& t, VerdictStatus s) {
  switch (s) {
    case VerdictStatus::kVerified:
      ++t.verified;
      break;
    case VerdictStatus::kUnverified:
      ++t.unverified;
      break;
    case VerdictStatus::kProviderError:
      ++t.provider_errors;
      break;
  }
}

}  // namespace

EvaluationReport evaluate_graph(const KnowledgeGraph& g,
                                SnippetProvider& provider,
                                const EvaluateOptions& options) {
  const auto& triplets = g.triplets();
  std::vector<std::optional<Verdict>> slots(triplets.size());
  parallel_for(triplets.size(), options.max_in_flight, [&](std::size_t i) {
    slots[i] = verify_fact(triplets[i], provider, options.n_words);
  });

  EvaluationReport report;
  report.seed = g.seed().text();
  for (auto& v : slots) {
    tally(report.overall, v->status);
    tally(report.by_depth[v->triplet.depth()], v->status);
    report.verdicts.push_back(std::move(*v));
  }
  return report;
}

namespace {

nlohmann::ordered_json tally_json(const PrecisionTally& t) {
  nlohmann::ordered_json j;
  auto p = t.precision();
  j["precision"] = p ? nlohmann::ordered_json(*p) : nlohmann::ordered_json();
  j["facts_count"] = t.facts_count();
  j["verified"] = t.verified;
  j["unverified"] = t.unverified;
  j["provider_errors"] = t.provider_errors;
  return j;
}

PrecisionTally tally_from_json(const nlohmann::json& j) {
  PrecisionTally t;
  t.verified = j.at("verified").get<std::size_t>();
  t.unverified = j.at("unverified").get<std::size_t>();
  t.provider_errors = j.at("provider_errors").get<std::size_t>();
  return t;
}

}  // namespace

std::string report_to_json(const EvaluationReport& report) {
  nlohmann::ordered_json j;
  j["seed"] = report.seed;
  const auto overall = tally_json(report.overall);
  for (const auto& [k, v] : overall.items()) j[k] = v;
  nlohmann::ordered_json depths = nlohmann::ordered_json::object();
  for (const auto& [d, t] : report.by_depth) {
    depths[std::to_string(d)] = tally_json(t);
  }
  j["by_depth"] = std::move(depths);
  auto verdicts = nlohmann::ordered_json::array();
  for (const auto& v : report.verdicts) {
    nlohmann::ordered_json jv;
    jv["subject"] = v.triplet.subject().text();
    jv["relation"] = v.triplet.relation().text();
    jv["object"] = v.triplet.object().text();
    jv["depth"] = v.triplet.depth();
    jv["status"] = std::string(to_string(v.status));
    jv["window"] = v.matched_window;
    if (!v.error.empty()) jv["error"] = v.error;
    verdicts.push_back(std::move(jv));
  }
  j["verdicts"] = std::move(verdicts);
  return j.dump(2);
}

EvaluationReport report_summary_from_json(const std::string& json) {
  auto j = nlohmann::json::parse(json);
  EvaluationReport r;
  r.seed = j.at("seed").get<std::string>();
  r.overall = tally_from_json(j);
  for (const auto& [k, v] : j.at("by_depth").items()) {
    r.by_depth[std::stoi(k)] = tally_from_json(v);
  }
  return r;
}

double pearson_correlation(std::span<const double> xs,
                           std::span<const double> ys) {
  if (xs.size() != ys.size()) {
    throw std::invalid_argument("pearson: length mismatch");
  }
  if (xs.size() < 2) throw std::invalid_argument("pearson: need >= 2 points");
  const auto n = static_cast<double>(xs.size());
  double mx = 0.0;
  double my = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    mx += xs[i];
    my += ys[i];
  }
  mx /= n;
  my /= n;
  double sxy = 0.0;
  double sxx = 0.0;
  double syy = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double dx = xs[i] - mx;
    const double dy = ys[i] - my;
    sxy += dx * dy;
    sxx += dx * dx;
    syy += dy * dy;
  }
  if (sxx == 0.0 || syy == 0.0) {
    throw std::invalid_argument("pearson: zero variance");
  }
  return std::clamp(sxy / std::sqrt(sxx * syy), -1.0, 1.0);
}

namespace {

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out.push_back('"');
    out.push_back(c);
  }
  out.push_back('"');
  return out;
}

}  // namespace

void write_correlation_csv(const std::vector<CorrelationRow>& rows,
                           std::ostream& out) {
  out << "seed,facts_count,reference_count\n";
  for (const auto& r : rows) {
    out << csv_field(r.seed) << ',' << r.facts_count << ',' << r.reference_count
        << '\n';
  }
}

}  // namespace kgcrawl
