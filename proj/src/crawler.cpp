// Copyright 2026 The kgcrawl Authors
// SPDX-License-Identifier: Apache-2.0

#include "kgcrawl/crawler.hpp"

#include <algorithm>
#include <iostream>
#include <regex>
#include <unordered_map>
#include <unordered_set>

#include "kgcrawl/checkpoint.hpp"
#include "kgcrawl/parallel.hpp"
#include "kgcrawl/prompting.hpp"

namespace kgcrawl {

CompletionRequest Decoding::request(std::string prompt, int max_tokens) const {
  if (mode == Mode::kGreedy) {
    return CompletionRequest::greedy(std::move(prompt), max_tokens);
  }
  return CompletionRequest::sampling(std::move(prompt), max_tokens, n_samples,
                                     temperature);
}

CrawlConfig CrawlConfig::pure_greedy() {
  CrawlConfig c;
  c.use_dk = false;
  c.use_subject_paraphrasing = false;
  c.use_relation_paraphrasing = false;
  return c;
}

void CrawlConfig::validate() const {
  if (max_depth < 1) throw std::invalid_argument("max_depth must be >= 1");
  if (vote_threshold < 1) {
    throw std::invalid_argument("vote_threshold must be >= 1");
  }
  if (!(dedup_threshold > 0.0 && dedup_threshold <= 1.0)) {
    throw std::invalid_argument("dedup_threshold must be in (0, 1]");
  }
  if (decoding.mode == Decoding::Mode::kSampling &&
      (decoding.n_samples < 1 || decoding.temperature < 0.0)) {
    throw std::invalid_argument("invalid sampling parameters");
  }
  if (max_relations_per_entity && *max_relations_per_entity == 0) {
    throw std::invalid_argument("max_relations_per_entity must be >= 1");
  }
}

PromptSet PromptSet::load(const std::filesystem::path& dir) {
  return {load_fixed_examples(dir / "relation_generation.txt"),
          load_fixed_examples(dir / "pure_object_generation.txt"),
          load_fixed_examples(dir / "dk_object_generation.txt")};
}

std::vector<Triplet> ExpansionRecord::triplets() const {
  std::vector<Triplet> out;
  for (const auto& rel : relations) {
    for (const auto& c : rel.candidates) {
      if (c.accepted) {
        out.emplace_back(entity, rel.relation, c.object, depth, c.provenance);
      }
    }
  }
  return out;
}

Crawler::Crawler(LanguageModel& lm, PromptSet prompts, CrawlConfig config,
                 WarningSink warn)
    : lm_(lm),
      prompts_(std::move(prompts)),
      config_(config),
      warn_(std::move(warn)) {
  config_.validate();
  if (prompts_.relation_generation.empty()) {
    throw std::invalid_argument("relation-generation examples are empty");
  }
  const auto& obj = config_.use_dk ? prompts_.dk_object_generation
                                   : prompts_.pure_object_generation;
  if (obj.empty()) {
    throw std::invalid_argument("object-generation examples are empty");
  }
}

void Crawler::warn(const std::string& msg) const {
  std::lock_guard lock(warn_mu_);
  if (warn_) {
    warn_(msg);
  } else {
    std::cerr << "warning: " << msg << '\n';
  }
}

namespace {

// Appends `items` to `out` unless their normalized form was already seen.
void append_unique(std::vector<std::string>& out,
                   std::unordered_set<std::string>& seen,
                   const std::vector<std::string>& items) {
  for (const auto& s : items) {
    if (seen.insert(normalize(s)).second) out.push_back(s);
  }
}

}  // namespace

std::vector<std::string> Crawler::paraphrase_subject(const EntityName& e) {
  std::vector<std::string> out{e.text()};
  if (!config_.use_subject_paraphrasing) return out;

  std::unordered_set<std::string> seen{e.key()};
  try {
    auto resp = lm_.complete(CompletionRequest::sampling(
        build_subject_paraphrase_prompt(e), kParaphraseMaxTokens));
    for (const auto& text : resp.texts) {
      if (auto p = parse_paraphrase_answer(text, e.text())) {
        append_unique(out, seen, {*p});
      }
    }
  } catch (const BackendError& err) {
    warn("subject paraphrasing failed for \"" + e.text() + "\": " + err.what());
  }
  return out;
}

std::vector<RelationName> Crawler::generate_relations(
    const std::vector<std::string>& subject_realizations) {
  if (subject_realizations.empty()) {
    throw std::invalid_argument("no subject realizations");
  }
  const auto n = subject_realizations.size();
  std::vector<std::optional<CompletionResponse>> responses(n);
  parallel_for(n, config_.max_in_flight, [&](std::size_t i) {
    try {
      responses[i] = lm_.complete(config_.decoding.request(
          build_qa_prompt(prompts_.relation_generation, subject_realizations[i])));
    } catch (const BackendError& err) {
      warn("relation generation failed for \"" + subject_realizations[i] +
           "\": " + err.what());
    }
  });

  std::vector<RelationName> out;
  std::unordered_set<std::string> seen;
  bool any_ok = false;
  for (const auto& resp : responses) {
    if (!resp) continue;
    any_ok = true;
    for (const auto& text : resp->texts) {
      for (const auto& rel : parse_list_answer(text)) {
        if (!is_valid_name(rel)) continue;
        RelationName r(rel);
        if (seen.insert(r.key()).second) out.push_back(std::move(r));
      }
    }
  }
  if (!any_ok) {
    throw CrawlError("relation generation failed for every realization of \"" +
                     subject_realizations.front() + "\"");
  }
  if (config_.max_relations_per_entity &&
      out.size() > *config_.max_relations_per_entity) {
    out.erase(out.begin() +
                  static_cast<std::ptrdiff_t>(*config_.max_relations_per_entity),
              out.end());
  }
  return out;
}

std::vector<std::string> Crawler::paraphrase_relation(const RelationName& r) {
  std::vector<std::string> out{r.text()};
  if (!config_.use_relation_paraphrasing) return out;

  const auto prompts = build_relation_paraphrase_prompts(r);
  std::vector<std::optional<std::string>> found(prompts.size());
  parallel_for(prompts.size(), config_.max_in_flight, [&](std::size_t i) {
    try {
      auto resp = lm_.complete(
          CompletionRequest::greedy(prompts[i], kParaphraseMaxTokens));
      if (!resp.texts.empty()) {
        found[i] = parse_paraphrase_answer(resp.texts[0], r.text());
      }
    } catch (const BackendError& err) {
      warn("relation paraphrasing failed for \"" + r.text() + "\": " +
           err.what());
    }
  });

  std::unordered_set<std::string> seen{r.key()};
  for (const auto& p : found) {
    if (p) append_unique(out, seen, {*p});
  }
  return out;
}

RelationExpansion Crawler::generate_objects(
    const EntityName& e, const RelationName& r,
    const std::vector<std::string>& subject_realizations,
    const std::vector<std::string>& relation_realizations) {
  if (subject_realizations.empty() || relation_realizations.empty()) {
    throw std::invalid_argument("realization lists must be non-empty");
  }
  const auto& examples = config_.use_dk ? prompts_.dk_object_generation
                                        : prompts_.pure_object_generation;
  const auto n_rel = relation_realizations.size();
  const auto n = subject_realizations.size() * n_rel;

  std::vector<std::optional<CompletionResponse>> responses(n);
  parallel_for(n, config_.max_in_flight, [&](std::size_t i) {
    const auto& s = subject_realizations[i / n_rel];
    const auto& rr = relation_realizations[i % n_rel];
    try {
      responses[i] = lm_.complete(config_.decoding.request(
          build_qa_prompt(examples, object_query(s, rr))));
    } catch (const BackendError& err) {
      warn("object generation failed for \"" + object_query(s, rr) +
           "\": " + err.what());
    }
  });

  struct Pool {
    std::vector<Realization> provenance;
    // Surface variant -> number of realizations producing it.
    std::vector<std::pair<std::string, std::size_t>> variants;
    std::optional<std::string> canonical_variant;
  };
  std::vector<std::string> order;
  std::unordered_map<std::string, Pool> pools;

  std::size_t queried = 0;
  std::unordered_set<std::size_t> relation_realizations_ok;
  for (std::size_t i = 0; i < n; ++i) {
    if (!responses[i]) continue;
    ++queried;
    relation_realizations_ok.insert(i % n_rel);
    const Realization realization{subject_realizations[i / n_rel],
                                  relation_realizations[i % n_rel]};

    // Union over samples; an abstaining sample adds nothing.
    std::vector<EntityName> produced;
    std::unordered_set<std::string> produced_keys;
    for (const auto& text : responses[i]->texts) {
      auto answer = parse_object_answer(text);
      for (const auto& o : answer.objects()) {
        if (produced_keys.insert(o.key()).second) produced.push_back(o);
      }
    }

    for (const auto& o : produced) {
      auto key = o.key();
      auto [it, inserted] = pools.try_emplace(key);
      if (inserted) order.push_back(key);
      auto& pool = it->second;
      pool.provenance.push_back(realization);
      auto v = std::find_if(pool.variants.begin(), pool.variants.end(),
                            [&](const auto& p) { return p.first == o.text(); });
      if (v == pool.variants.end()) {
        pool.variants.emplace_back(o.text(), 1);
      } else {
        ++v->second;
      }
      if (i == 0) pool.canonical_variant = o.text();
    }
  }
  if (queried == 0) {
    throw CrawlError("object generation failed for every realization of \"" +
                     object_query(e.text(), r.text()) + "\"");
  }

  RelationExpansion out{r, relation_realizations, queried, 0, {}};
  const auto pool_size = config_.votes_from_relation_realizations_only
                             ? relation_realizations_ok.size()
                             : queried;
  out.vote_bound = std::min(config_.vote_threshold, pool_size);

  for (const auto& key : order) {
    auto& pool = pools[key];
    std::string surface;
    if (pool.canonical_variant) {
      surface = *pool.canonical_variant;
    } else {
      // Most frequent; the stable first-appearance order breaks ties.
      auto best = pool.variants.begin();
      for (auto it = pool.variants.begin(); it != pool.variants.end(); ++it) {
        if (it->second > best->second) best = it;
      }
      surface = best->first;
    }
    std::size_t votes = pool.provenance.size();
    if (config_.votes_from_relation_realizations_only) {
      std::unordered_set<std::string> rels;
      for (const auto& p : pool.provenance) rels.insert(p.relation);
      votes = rels.size();
    }
    out.candidates.push_back(ObjectCandidate{
        EntityName(surface), std::move(pool.provenance), votes >= out.vote_bound});
  }
  return out;
}

ExpansionRecord Crawler::expand_entity(const EntityName& e, int depth) {
  ExpansionRecord rec{e, depth, paraphrase_subject(e), {}};
  auto relations = generate_relations(rec.subject_realizations);
  for (const auto& r : relations) {
    auto realizations = paraphrase_relation(r);
    rec.relations.push_back(
        generate_objects(e, r, rec.subject_realizations, realizations));
  }
  return rec;
}

CrawlResult Crawler::run(const EntityName& seed, CrawlCheckpoint* checkpoint) {
  KnowledgeGraph raw(seed);
  std::vector<ExpansionRecord> expansions;
  std::unordered_set<std::string> visited{seed.key()};
  std::vector<EntityName> frontier{seed};

  for (int depth = 1; depth <= config_.max_depth && !frontier.empty(); ++depth) {
    std::vector<EntityName> next;
    for (const auto& entity : frontier) {
      ExpansionRecord rec = [&] {
        if (checkpoint) {
          if (const auto* saved = checkpoint->find(entity.text())) return *saved;
        }
        auto fresh = expand_entity(entity, depth);
        if (checkpoint) checkpoint->append(fresh);
        return fresh;
      }();

      for (auto& t : rec.triplets()) {
        const auto& object = t.object();
        if (depth < config_.max_depth && !visited.contains(object.key()) &&
            !(config_.skip_literal_objects && looks_like_literal(object.text()))) {
          visited.insert(object.key());
          next.push_back(object);
        }
        raw.insert(std::move(t));
      }
      expansions.push_back(std::move(rec));
    }
    frontier = std::move(next);
  }

  auto kept = dedup_facts(raw.triplets(), config_.dedup_threshold);
  return {KnowledgeGraph::from_triplets(seed, std::move(kept)),
          std::move(expansions)};
}

bool looks_like_literal(std::string_view text) {
  static const std::regex kNumber(R"(^[+-]?[\d][\d,.\s/:-]*$)");
  static const std::regex kDate(
      R"(^(\d{1,2}\s+)?(january|february|march|april|may|june|july|august|september|october|november|december)(\s+\d{1,2})?,?\s+\d{1,4}$)",
      std::regex::icase);
  std::string s(text);
  return std::regex_match(s, kNumber) || std::regex_match(s, kDate);
}

}  // namespace kgcrawl
