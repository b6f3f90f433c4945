// Copyright 2026 The kgcrawl Authors
// SPDX-License-Identifier: Apache-2.0

#include "kgcrawl/dk_bootstrap.hpp"

#include <algorithm>
#include <unordered_set>

#include "kgcrawl/parallel.hpp"
#include "kgcrawl/random.hpp"
#include "kgcrawl/text_util.hpp"

namespace kgcrawl {

std::string_view to_string(ProbeVerdict v) {
  switch (v) {
    case ProbeVerdict::kCorrect:
      return "correct";
    case ProbeVerdict::kWrong:
      return "wrong";
    case ProbeVerdict::kAbstained:
      return "abstained";
  }
  return "unknown";
}

bool object_matches(const EntityName& predicted, const EntityName& gold) {
  return predicted.key() == gold.key() ||
         token_f1(predicted.text(), gold.text()) >= kGoldMatchF1;
}

ProbeVerdict classify_prediction(const ObjectAnswer& predicted,
                                 const std::vector<EntityName>& gold) {
  if (predicted.is_dont_know()) return ProbeVerdict::kAbstained;
  for (const auto& p : predicted.objects()) {
    for (const auto& g : gold) {
      if (object_matches(p, g)) return ProbeVerdict::kCorrect;
    }
  }
  return ProbeVerdict::kWrong;
}

std::vector<DkProbeResult> probe(
    const ReferenceKb& kb, LanguageModel& lm,
    const std::vector<std::pair<std::string, std::string>>& pairs,
    const ProbeOptions& options) {
  std::vector<const ReferenceFact*> facts;
  for (const auto& [s, r] : pairs) {
    const auto* f = kb.find(s, r);
    if (!f) {
      throw std::invalid_argument("pair not in reference KB: " +
                                  object_query(s, r));
    }
    facts.push_back(f);
  }

  std::vector<std::optional<DkProbeResult>> slots(facts.size());
  parallel_for(facts.size(), options.max_in_flight, [&](std::size_t i) {
    const auto& f = *facts[i];
    auto prompt = build_qa_prompt(
        options.examples, object_query(f.subject.text(), f.relation.text()));
    try {
      auto resp = lm.complete(CompletionRequest::greedy(std::move(prompt)));
      auto answer = parse_object_answer(resp.texts.empty() ? "" : resp.texts[0]);
      auto verdict = classify_prediction(answer, f.objects);
      slots[i] = DkProbeResult{f.subject, f.relation, f.objects, std::move(answer),
                               verdict, std::nullopt};
    } catch (const BackendError& e) {
      slots[i] = DkProbeResult{f.subject,
                               f.relation,
                               f.objects,
                               ObjectAnswer::dont_know(),
                               ProbeVerdict::kAbstained,
                               std::string(e.what())};
    }
  });

  std::vector<DkProbeResult> out;
  out.reserve(slots.size());
  for (auto& s : slots) out.push_back(std::move(*s));
  return out;
}

InsufficientProbesError::InsufficientProbesError(std::size_t wrong,
                                                 std::size_t correct,
                                                 std::size_t needed)
    : std::runtime_error("need " + std::to_string(needed) +
                         " wrong and correct probes each, got " +
                         std::to_string(wrong) + " wrong and " +
                         std::to_string(correct) + " correct"),
      wrong_(wrong),
      correct_(correct) {}

std::vector<InContextExample> build_dk_examples(
    const std::vector<DkProbeResult>& results, std::size_t k_dk,
    std::uint64_t rng_seed) {
  if (k_dk == 0 || k_dk % 2 != 0) {
    throw std::invalid_argument("k_dk must be a positive even number, got " +
                                std::to_string(k_dk));
  }
  const std::size_t half = k_dk / 2;

  std::vector<const DkProbeResult*> wrong;
  std::vector<const DkProbeResult*> correct;
  std::unordered_set<std::string> seen;
  for (const auto& r : results) {
    if (r.verdict == ProbeVerdict::kAbstained) continue;
    if (!seen.insert(object_query(r.subject.key(), r.relation.key())).second) {
      continue;
    }
    (r.verdict == ProbeVerdict::kWrong ? wrong : correct).push_back(&r);
  }
  if (wrong.size() < half || correct.size() < half) {
    throw InsufficientProbesError(wrong.size(), correct.size(), half);
  }
  // Independent streams for the two pools and the final interleaving.
  seeded_shuffle(wrong, rng_seed);
  seeded_shuffle(correct, rng_seed + 1);

  std::vector<InContextExample> out;
  for (std::size_t i = 0; i < half; ++i) {
    const auto& w = *wrong[i];
    out.emplace_back(object_query(w.subject.text(), w.relation.text()),
                     std::string(kDontKnow));
  }
  for (std::size_t i = 0; i < half; ++i) {
    const auto& c = *correct[i];
    std::vector<std::string> gold;
    for (const auto& g : c.gold_objects) gold.push_back(g.text());
    out.emplace_back(object_query(c.subject.text(), c.relation.text()),
                     join(gold, " # "));
  }
  seeded_shuffle(out, rng_seed + 2);
  return out;
}

}  // namespace kgcrawl
